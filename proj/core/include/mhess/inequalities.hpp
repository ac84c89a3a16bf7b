#pragma once

// Field-level inequalities on smooth instances: the mixed Hessian
// inequality, the comparison principle, the domination principle and the
// smooth uniqueness shadow.

#include <optional>
#include <span>

#include "mhess/measures.hpp"

namespace mhess {

/// Hypotheses: every u_j is omega-m-sh and H_m(u_j) >= f_j * mu - tol
/// pointwise; a violated hypothesis throws Refusal with {"field": j, point}.
/// Conclusion: mixed(u_1..u_m) >= (prod f_j)^{1/m} * mu - tol pointwise.
/// f_j and mu must be non-negative.
CheckReport check_mixed_inequality(std::span<const TorusField> us, const DensityField& mu,
                                   std::span<const DensityField> fs, double tol = 1e-6);

/// int_{u<v} H_m(v) <= int_{u<v} H_m(u) + tol_mass. Refuses non-periodic or
/// non-m-sh inputs.
CheckReport check_comparison(const TorusField& u, const TorusField& v, int m,
                             std::optional<double> tol_mass = {});

/// Default 10 h.
double default_tol_dom(const TorusGrid& grid);

/// Hypothesis mass int_{u<v} H_m(u). At most tol_mass: pass iff
/// min(u - v) >= -tol_dom. Otherwise the outcome is no_claim.
CheckReport check_domination(const TorusField& u, const TorusField& v, int m,
                             std::optional<double> tol_mass = {},
                             std::optional<double> tol_dom = {});

/// Hypothesis: |H_m(u) - H_m(v)| <= tol_density pointwise. Conclusion:
/// max |u - v - mean(u - v)| <= tol_dom. no_claim when the densities differ.
CheckReport check_constant_difference(const TorusField& u, const TorusField& v, int m,
                                      double tol_density = 1e-9,
                                      std::optional<double> tol_dom = {});

/// Hypotheses: H_m(u) <= e^u mu and H_m(v) >= e^v mu pointwise (within
/// tol). Conclusion: v <= u + tol_dom. no_claim when a hypothesis fails.
CheckReport check_exponential_comparison(const TorusField& u, const TorusField& v, int m,
                                         const DensityField& mu, double tol = 1e-9,
                                         std::optional<double> tol_dom = {});

}  // namespace mhess
