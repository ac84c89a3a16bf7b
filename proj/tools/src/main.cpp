#include <iostream>

#include <CLI11.hpp>

#include "mhess/errors.hpp"
#include "mhess_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace mhess::cli;
  CLI::App app{"mhess: complex Hessian measures and their inequalities on a flat torus"};
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "key = value file; command-line flags override it");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig cfg;
  std::string out = cfg.out.string();
  double tol_mass = 0.0;
  app.add_option("--n", cfg.n, "complex dimension")->capture_default_str();
  app.add_option("--grid", cfg.grid, "points per real axis (even, >= 8)")->capture_default_str();
  app.add_option("--m", cfg.m, "Hessian degree, 1 <= m <= n")->capture_default_str();
  app.add_option("--k", cfg.k, "log-max parameters")->delimiter(',')->capture_default_str();
  app.add_option("--eps", cfg.eps, "decreasing regularization sequence")->delimiter(',')->capture_default_str();
  app.add_option("--radius", cfg.radius, "polydisc / ball radius for singular masses")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  auto* tol_opt = app.add_option("--tol-mass", tol_mass, "mass tolerance (default 1e-3 (64h)^2)");
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--samples", cfg.samples, "random tuples for check-garding")->capture_default_str();
  app.add_option("--budget", cfg.budget, "capacity evaluations")->capture_default_str();
  app.add_option("--region", cfg.region, "capacity region: full, slab, empty")->capture_default_str();
  app.add_option("--variant", cfg.variant, "dominate instance: below, bump")->capture_default_str();
  app.add_flag("--refine", cfg.refine, "mass-conservation: also run at 2N and check the shrink factor");
  app.add_option("--fields", cfg.fields, "verify-mixed: m field files")->delimiter(',');

  std::string command;
  for (const auto& name : subcommands()) {
    app.add_subcommand(name, "run the " + name + " suite")->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  cfg.out = out;
  if (tol_opt->count() > 0) cfg.tol_mass = tol_mass;

  try {
    const int status = run(command, cfg);
    std::cout << command << ": status " << status << " (report " << (cfg.out / (command + ".json")).string()
              << ")\n";
    return status;
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kUsage;
  } catch (const mhess::Refusal& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
