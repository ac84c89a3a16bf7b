#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mhess {

/// dd^c is normalized so that dd^c|z|^2 is the identity metric. With that
/// choice the 1-D mass of dd^c log|z| is pi/2 and masses in the (2 pi)^2 normalization are
/// recovered by multiplying raw masses with c_conv = (2 pi)^2 / (pi/2)^2 = 16.
inline constexpr double kNominalConventionConstant = 16.0;

inline constexpr std::string_view kNormalizationStatement =
    "dd^c |z|^2 = omega = identity; H_m density = sigma_m(lambda)/C(n,m), "
    "so H_m(0) = 1 and the flat torus has unit volume";

inline constexpr std::string_view kReportSchema = "mhess.report/1";

enum class Outcome { pass, fail, no_claim };

std::string_view to_string(Outcome outcome);

struct Provenance {
  std::optional<int> n;
  std::optional<int> grid;
  std::vector<double> eps;
  std::optional<std::uint64_t> seed;
  double c_conv = kNominalConventionConstant;
  bool c_conv_measured = false;
};

/// Outcome of one verification. Every failing report carries a location
/// (a grid multi-index, a matrix index or a parameter vector).
struct CheckReport {
  std::string suite;
  Outcome outcome = Outcome::fail;
  double worst_margin = 0.0;
  double tolerance = 0.0;
  nlohmann::json location = nullptr;
  Provenance provenance;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const noexcept { return outcome == Outcome::pass; }
};

/// Throws std::logic_error if the report breaks its invariants.
void validate(const CheckReport& report);

nlohmann::json to_json(const CheckReport& report);

/// Location helper for grid points.
nlohmann::json grid_location(const std::vector<int>& multi_index);

}  // namespace mhess
