#pragma once

// Brute-force exterior algebra for top-degree products of real (1,1)-forms.
// Deliberately independent of the eigenvalue route in hermitian.hpp; only
// meant for small n.

#include <span>

#include "mhess/hermitian.hpp"

namespace mhess::forms {

inline constexpr int kMaxOracleDim = 5;

/// sum_{p,q} a_{pq} (i dz_p ^ dz-bar_q), represented by its Hermitian
/// coefficient matrix.
struct OneOneForm {
  HermitianMatrix coefficients;
};

/// Coefficient of forms[0] ^ ... ^ forms[n-1] against the product of the n
/// diagonal basis forms:
///   sum_{s,t in S_n} sgn(s) sgn(t) prod_j a^{(j)}_{s(j) t(j)}.
/// n identity forms give n!.
double wedge_top_coefficient(std::span<const OneOneForm> forms);

/// wedge(m copies of diag(d), n-m identities) / sigma_m(d) for a generic
/// diagonal d. Equals m!(n-m)! whatever d is.
double normalization_constant(int n, int m);
double normalization_constant(int n, int m, std::span<const double> generic_diagonal);

}  // namespace mhess::forms
