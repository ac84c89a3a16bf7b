#include "mhess/report.hpp"

#include <cmath>
#include <stdexcept>

namespace mhess {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::pass:
      return "pass";
    case Outcome::fail:
      return "fail";
    case Outcome::no_claim:
      return "no_claim";
  }
  return "unknown";
}

void validate(const CheckReport& report) {
  if (report.suite.empty()) throw std::logic_error("report without suite name");
  if (report.outcome == Outcome::fail && report.location.is_null()) {
    throw std::logic_error("failing report '" + report.suite + "' carries no location");
  }
}

namespace {

// JSON has no inf/nan; keep them readable instead of silently emitting null.
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json to_json(const CheckReport& report) {
  validate(report);
  nlohmann::json prov = nlohmann::json::object();
  prov["n"] = report.provenance.n ? nlohmann::json(*report.provenance.n) : nlohmann::json(nullptr);
  prov["grid"] =
      report.provenance.grid ? nlohmann::json(*report.provenance.grid) : nlohmann::json(nullptr);
  prov["eps"] = report.provenance.eps;
  prov["seed"] =
      report.provenance.seed ? nlohmann::json(*report.provenance.seed) : nlohmann::json(nullptr);
  prov["c_conv"] = report.provenance.c_conv;
  prov["c_conv_source"] = report.provenance.c_conv_measured ? "measured" : "nominal";
  prov["normalization"] = std::string(kNormalizationStatement);

  nlohmann::json j;
  j["schema"] = std::string(kReportSchema);
  j["suite"] = report.suite;
  j["outcome"] = std::string(to_string(report.outcome));
  j["passed"] = report.passed();
  j["worst_margin"] = number(report.worst_margin);
  j["tolerance"] = number(report.tolerance);
  j["location"] = report.location;
  j["provenance"] = std::move(prov);
  j["details"] = report.details;
  return j;
}

nlohmann::json grid_location(const std::vector<int>& multi_index) {
  return nlohmann::json{{"grid_index", multi_index}};
}

}  // namespace mhess
