#include "mhess/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mhess/errors.hpp"
#include "mhess/parallel.hpp"

namespace mhess {

namespace {

void require_same(const TorusField& a, const TorusField& b, const char* where) {
  if (!(a.grid() == b.grid()) || a.domain() != b.domain()) {
    throw std::invalid_argument(std::string(where) + ": fields live on different grids");
  }
}

void require_m_sh(const TorusField& u, int m, const char* where, const char* name) {
  const CheckReport r = verify_m_sh(u, m);
  if (!r.passed()) {
    nlohmann::json loc = r.location;
    loc["field"] = name;
    throw Refusal(std::string(where) + ": " + name + " is not omega-" + std::to_string(m) + "-sh",
                  loc);
  }
}

void fill_provenance(CheckReport& r, const TorusGrid& grid) {
  r.provenance.n = grid.n();
  r.provenance.grid = grid.points_per_axis();
}

struct Extremum {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

// min over valid points of (u - v) and the mean of u - v.
Extremum min_difference(const TorusField& u, const TorusField& v, double* mean) {
  Extremum e;
  std::vector<double> diffs;
  diffs.reserve(u.grid().size());
  for (std::size_t i = 0; i < u.grid().size(); ++i) {
    if (!u.grid().is_valid(i, u.domain())) continue;
    const double d = u[i] - v[i];
    diffs.push_back(d);
    if (d < e.value) {
      e.value = d;
      e.index = i;
    }
  }
  if (mean) *mean = diffs.empty() ? 0.0 : pairwise_sum(diffs) / static_cast<double>(diffs.size());
  return e;
}

}  // namespace

CheckReport check_mixed_inequality(std::span<const TorusField> us, const DensityField& mu,
                                   std::span<const DensityField> fs, double tol) {
  const int m = static_cast<int>(us.size());
  if (m < 1) throw std::invalid_argument("check_mixed_inequality: no fields");
  if (fs.size() != us.size()) {
    throw std::invalid_argument("check_mixed_inequality: need one density f_j per field");
  }
  const TorusGrid& grid = us.front().grid();
  const Domain domain = us.front().domain();
  if (m > grid.n()) throw std::invalid_argument("check_mixed_inequality: m exceeds n");
  for (const auto& u : us) require_same(u, us.front(), "check_mixed_inequality");
  const auto same_density_grid = [&](const DensityField& d) {
    return d.grid == grid && d.domain == domain;
  };
  if (!same_density_grid(mu)) throw std::invalid_argument("check_mixed_inequality: mu grid");
  for (const auto& f : fs) {
    if (!same_density_grid(f)) throw std::invalid_argument("check_mixed_inequality: f grid");
  }

  for (int j = 0; j < m; ++j) {
    const auto& u = us[static_cast<std::size_t>(j)];
    const CheckReport sh = verify_m_sh(u, m);
    if (!sh.passed()) {
      nlohmann::json loc = sh.location;
      loc["field"] = j;
      throw Refusal("check_mixed_inequality: u_" + std::to_string(j) + " is not omega-" +
                        std::to_string(m) + "-sh",
                    loc);
    }
    const DensityField h = hessian_measure(u, m);
    const DensityField& f = fs[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!grid.is_valid(i, domain)) continue;
      if (f.values[i] < 0.0 || mu.values[i] < 0.0) {
        throw std::invalid_argument("check_mixed_inequality: f_j and mu must be non-negative");
      }
      if (h.values[i] < f.values[i] * mu.values[i] - tol) {
        nlohmann::json loc = grid_location(grid.multi_index(i));
        loc["field"] = j;
        throw Refusal("check_mixed_inequality: H_m(u_" + std::to_string(j) +
                          ") < f_j mu at a grid point",
                      loc);
      }
    }
  }

  const DensityField mixed = mixed_measure(us);
  Extremum worst;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.is_valid(i, domain)) continue;
    double geometric = 1.0;
    for (const auto& f : fs) geometric *= std::pow(f.values[i], 1.0 / m);
    const double margin = mixed.values[i] - geometric * mu.values[i];
    if (margin < worst.value) {
      worst.value = margin;
      worst.index = i;
    }
  }

  CheckReport r;
  r.suite = "mixed-inequality";
  r.worst_margin = worst.value;
  r.tolerance = tol;
  r.outcome = worst.value >= -tol ? Outcome::pass : Outcome::fail;
  if (!r.passed()) r.location = grid_location(grid.multi_index(worst.index));
  fill_provenance(r, grid);
  r.details = {{"m", m}, {"worst_point", grid_location(grid.multi_index(worst.index))}};
  return r;
}

CheckReport check_comparison(const TorusField& u, const TorusField& v, int m,
                             std::optional<double> tol_mass) {
  require_same(u, v, "check_comparison");
  if (!u.periodic()) throw Refusal("check_comparison: fields must be periodic");
  require_m_sh(u, m, "check_comparison", "u");
  require_m_sh(v, m, "check_comparison", "v");
  const double tol = tol_mass.value_or(default_tol_mass(u.grid()));
  const RegionMask below = strict_sublevel(u, v);
  const double lhs = integrate_hessian_measure(v, m, below);
  const double rhs = integrate_hessian_measure(u, m, below);

  CheckReport r;
  r.suite = "comparison";
  r.worst_margin = rhs - lhs;
  r.tolerance = tol;
  r.outcome = r.worst_margin >= -tol ? Outcome::pass : Outcome::fail;
  if (!r.passed()) r.location = nlohmann::json{{"m", m}, {"set_points", below.count()}};
  fill_provenance(r, u.grid());
  r.details = {{"m", m},
               {"mass_v_on_set", lhs},
               {"mass_u_on_set", rhs},
               {"set_points", below.count()}};
  return r;
}

double default_tol_dom(const TorusGrid& grid) { return 10.0 * grid.spacing(); }

CheckReport check_domination(const TorusField& u, const TorusField& v, int m,
                             std::optional<double> tol_mass, std::optional<double> tol_dom) {
  require_same(u, v, "check_domination");
  require_m_sh(u, m, "check_domination", "u");
  require_m_sh(v, m, "check_domination", "v");
  const double tm = tol_mass.value_or(default_tol_mass(u.grid()));
  const double td = tol_dom.value_or(default_tol_dom(u.grid()));
  const RegionMask below = strict_sublevel(u, v);
  const double hypothesis_mass = integrate_hessian_measure(u, m, below);
  const Extremum e = min_difference(u, v, nullptr);

  CheckReport r;
  r.suite = "domination";
  r.tolerance = td;
  r.worst_margin = e.value + td;
  fill_provenance(r, u.grid());
  r.details = {{"m", m},
               {"hypothesis_mass", hypothesis_mass},
               {"tol_mass", tm},
               {"min_u_minus_v", e.value},
               {"set_points", below.count()}};
  if (hypothesis_mass > tm) {
    r.outcome = Outcome::no_claim;
    r.details["note"] = "hypothesis not met: H_m(u) charges {u < v}; no claim";
    return r;
  }
  r.outcome = e.value >= -td ? Outcome::pass : Outcome::fail;
  if (!r.passed()) r.location = grid_location(u.grid().multi_index(e.index));
  return r;
}

CheckReport check_constant_difference(const TorusField& u, const TorusField& v, int m,
                                      double tol_density, std::optional<double> tol_dom) {
  require_same(u, v, "check_constant_difference");
  require_m_sh(u, m, "check_constant_difference", "u");
  require_m_sh(v, m, "check_constant_difference", "v");
  const double td = tol_dom.value_or(default_tol_dom(u.grid()));
  const DensityField hu = hessian_measure(u, m);
  const DensityField hv = hessian_measure(v, m);
  double density_gap = 0.0;
  for (std::size_t i = 0; i < u.grid().size(); ++i) {
    if (u.grid().is_valid(i, u.domain())) {
      density_gap = std::max(density_gap, std::abs(hu.values[i] - hv.values[i]));
    }
  }
  double mean = 0.0;
  min_difference(u, v, &mean);
  Extremum worst{0.0, 0};
  for (std::size_t i = 0; i < u.grid().size(); ++i) {
    if (!u.grid().is_valid(i, u.domain())) continue;
    const double dev = std::abs(u[i] - v[i] - mean);
    if (dev > worst.value) {
      worst.value = dev;
      worst.index = i;
    }
  }

  CheckReport r;
  r.suite = "constant-difference";
  r.tolerance = td;
  r.worst_margin = td - worst.value;
  fill_provenance(r, u.grid());
  r.details = {{"m", m}, {"density_gap", density_gap}, {"mean_difference", mean},
               {"max_deviation", worst.value}};
  if (density_gap > tol_density) {
    r.outcome = Outcome::no_claim;
    r.details["note"] = "hypothesis not met: H_m(u) and H_m(v) differ; no claim";
    return r;
  }
  r.outcome = worst.value <= td ? Outcome::pass : Outcome::fail;
  if (!r.passed()) r.location = grid_location(u.grid().multi_index(worst.index));
  return r;
}

CheckReport check_exponential_comparison(const TorusField& u, const TorusField& v, int m,
                                         const DensityField& mu, double tol,
                                         std::optional<double> tol_dom) {
  require_same(u, v, "check_exponential_comparison");
  if (!(mu.grid == u.grid())) throw std::invalid_argument("check_exponential_comparison: mu grid");
  require_m_sh(u, m, "check_exponential_comparison", "u");
  require_m_sh(v, m, "check_exponential_comparison", "v");
  const double td = tol_dom.value_or(default_tol_dom(u.grid()));
  const DensityField hu = hessian_measure(u, m);
  const DensityField hv = hessian_measure(v, m);
  double slack_u = std::numeric_limits<double>::infinity();
  double slack_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.grid().size(); ++i) {
    if (!u.grid().is_valid(i, u.domain())) continue;
    slack_u = std::min(slack_u, std::exp(u[i]) * mu.values[i] - hu.values[i]);
    slack_v = std::min(slack_v, hv.values[i] - std::exp(v[i]) * mu.values[i]);
  }
  // v <= u  <=>  u - v >= 0
  const Extremum e = min_difference(u, v, nullptr);

  CheckReport r;
  r.suite = "exponential-comparison";
  r.tolerance = td;
  r.worst_margin = e.value + td;
  fill_provenance(r, u.grid());
  r.details = {{"m", m}, {"slack_u", slack_u}, {"slack_v", slack_v},
               {"min_u_minus_v", e.value}};
  if (slack_u < -tol || slack_v < -tol) {
    r.outcome = Outcome::no_claim;
    r.details["note"] = "hypothesis not met; no claim";
    return r;
  }
  r.outcome = e.value >= -td ? Outcome::pass : Outcome::fail;
  if (!r.passed()) r.location = grid_location(u.grid().multi_index(e.index));
  return r;
}

}  // namespace mhess
