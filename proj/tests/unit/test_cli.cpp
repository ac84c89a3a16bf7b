#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "mhess/field_io.hpp"
#include "mhess/instances.hpp"
#include "mhess_cli/commands.hpp"
#include "mhess_cli/config.hpp"

using namespace mhess::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "mhess-cli-tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int exit_code(const std::string& args) {
  const std::string cmd = std::string(MHESS_EXE) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string field_named(const RunConfig& cfg) {
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return {};
}

}  // namespace

TEST(Config, DefaultsValidate) { EXPECT_NO_THROW(validate(RunConfig{})); }

TEST(Config, ErrorsNameTheField) {
  RunConfig c;
  c.grid = 7;
  EXPECT_EQ(field_named(c), "grid");
  c = {};
  c.m = 3;
  EXPECT_EQ(field_named(c), "m");
  c = {};
  c.eps = {0.05, 0.1};
  EXPECT_EQ(field_named(c), "eps");
  c = {};
  c.k = {-1.0};
  EXPECT_EQ(field_named(c), "k");
  c = {};
  c.region = "moon";
  EXPECT_EQ(field_named(c), "region");
  c = {};
  c.fields = {"one.mhsf"};
  EXPECT_EQ(field_named(c), "fields");
}

TEST(Config, JsonEchoesValues) {
  RunConfig c;
  c.seed = 77;
  const auto j = to_json(c);
  EXPECT_EQ(j.at("seed"), 77);
  EXPECT_EQ(j.at("grid"), 64);
}

TEST(Status, CombinePrecedence) {
  EXPECT_EQ(combine_status(kPass, kPass), kPass);
  EXPECT_EQ(combine_status(kPass, kRefused), kRefused);
  EXPECT_EQ(combine_status(kRefused, kFail), kFail);
  EXPECT_EQ(combine_status(kFail, kPass), kFail);
}

TEST(Execute, UnknownCommand) { EXPECT_THROW(execute("frobnicate", RunConfig{}), ConfigError); }

TEST(Execute, GardingSmall) {
  RunConfig c;
  c.n = 3;
  c.m = 2;
  c.samples = 50;
  const CommandResult r = execute("check-garding", c);
  EXPECT_EQ(r.status, kPass);
  ASSERT_FALSE(r.reports.empty());
}

TEST(Execute, CompareAndDominate) {
  RunConfig c;
  c.grid = 16;
  EXPECT_EQ(execute("compare", c).status, kPass);
  EXPECT_EQ(execute("dominate", c).status, kPass);
  c.variant = "bump";
  const CommandResult bump = execute("dominate", c);
  EXPECT_EQ(bump.status, kRefused);
  EXPECT_EQ(bump.reports.front().at("outcome"), "no_claim");
}

TEST(Execute, VerifyMixedRefusesBadField) {
  const fs::path dir = scratch("fields");
  const mhess::TorusGrid g(2, 16);
  mhess::write_field(dir / "bad.mhsf", mhess::sample(mhess::ClosedFormPotential::trig_product(1.0), g));
  mhess::write_field(dir / "good.mhsf", mhess::sample(mhess::instances::trig_product(), g));
  RunConfig c;
  c.grid = 16;
  c.fields = {(dir / "good.mhsf").string(), (dir / "bad.mhsf").string()};
  const CommandResult r = execute("verify-mixed", c);
  EXPECT_EQ(r.status, kRefused);
  EXPECT_EQ(r.reports.front().at("outcome"), "refused");
}

TEST(Run, WritesReportAndLog) {
  const fs::path dir = scratch("run");
  RunConfig c;
  c.grid = 16;
  c.out = dir;
  EXPECT_EQ(run("compare", c), kPass);
  std::ifstream in(dir / "compare.json");
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc.at("schema"), "mhess.run/1");
  EXPECT_EQ(doc.at("status"), 0);
  EXPECT_EQ(doc.at("reports").front().at("schema"), "mhess.report/1");
  EXPECT_TRUE(fs::exists(dir / "mhess.log"));
}

TEST(Executable, ExitCodes) {
  const fs::path dir = scratch("exe");
  const std::string out = " --out " + dir.string();
  EXPECT_EQ(exit_code("--grid 16" + out + " compare"), kPass);
  EXPECT_EQ(exit_code("--grid 7" + out + " compare"), kUsage);
  EXPECT_EQ(exit_code(out), kUsage);
  EXPECT_EQ(exit_code("--grid 16 --variant bump" + out + " dominate"), kRefused);
  EXPECT_EQ(exit_code("--grid 16 --region full --budget 3" + out + " capacity"), kPass);
}

TEST(Executable, ConfigFile) {
  const fs::path dir = scratch("ini");
  std::ofstream(dir / "run.ini") << "grid = 16\nout = " << dir.string() << "\n";
  EXPECT_EQ(exit_code("--config " + (dir / "run.ini").string() + " compare"), kPass);
  std::ifstream in(dir / "compare.json");
  EXPECT_EQ(nlohmann::json::parse(in).at("config").at("grid"), 16);
}
