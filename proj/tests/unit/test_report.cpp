#include <gtest/gtest.h>

#include <limits>

#include "mhess/report.hpp"

using namespace mhess;

TEST(Report, OutcomeNames) {
  EXPECT_EQ(to_string(Outcome::pass), "pass");
  EXPECT_EQ(to_string(Outcome::fail), "fail");
  EXPECT_EQ(to_string(Outcome::no_claim), "no_claim");
}

TEST(Report, FailureNeedsLocation) {
  CheckReport r;
  r.suite = "x";
  r.outcome = Outcome::fail;
  EXPECT_THROW(validate(r), std::logic_error);
  EXPECT_THROW(to_json(r), std::logic_error);
  r.location = grid_location({1, 2});
  EXPECT_NO_THROW(validate(r));
}

TEST(Report, NeedsSuite) {
  CheckReport r;
  r.outcome = Outcome::pass;
  EXPECT_THROW(validate(r), std::logic_error);
}

TEST(Report, JsonShape) {
  CheckReport r;
  r.suite = "total-mass";
  r.outcome = Outcome::pass;
  r.worst_margin = std::numeric_limits<double>::infinity();
  r.tolerance = 1e-3;
  r.provenance.n = 2;
  r.provenance.grid = 64;
  r.provenance.seed = 9;
  const auto j = to_json(r);
  EXPECT_EQ(j.at("schema"), "mhess.report/1");
  EXPECT_EQ(j.at("outcome"), "pass");
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_EQ(j.at("worst_margin"), "inf");
  EXPECT_EQ(j.at("provenance").at("grid"), 64);
  EXPECT_EQ(j.at("provenance").at("seed"), 9);
  EXPECT_EQ(j.at("provenance").at("c_conv"), kNominalConventionConstant);
  EXPECT_EQ(j.at("provenance").at("c_conv_source"), "nominal");
  EXPECT_TRUE(j.at("provenance").at("eps").is_array());
  EXPECT_FALSE(j.at("provenance").at("normalization").get<std::string>().empty());
}

TEST(Report, GridLocation) {
  EXPECT_EQ(grid_location({3, 4}).at("grid_index"), nlohmann::json::array({3, 4}));
}
