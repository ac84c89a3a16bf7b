#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mhess::cli {

enum ExitStatus : int { kPass = 0, kFail = 1, kUsage = 2, kRefused = 3 };

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{
      "check-garding", "verify-mixed", "mass-conservation", "compare", "dominate",
      "singular-mass", "violation",    "w12",               "capacity", "all"};
  return names;
}

struct RunConfig {
  int n = 2;
  int grid = 64;
  int m = 2;
  std::vector<double> k{2.0};
  std::vector<double> eps{0.1, 0.05, 0.025};
  double radius = 0.95;
  std::uint64_t seed = 1;
  std::optional<double> tol_mass;
  std::filesystem::path out = "mhess-out";
  std::size_t samples = 1000;
  std::size_t budget = 16;
  std::string region = "slab";
  std::string variant = "below";
  bool refine = false;
  std::vector<std::string> fields;
};

/// Names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

void validate(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace mhess::cli
