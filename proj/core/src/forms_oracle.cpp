#include "mhess/forms_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhess::forms {

namespace {

int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// Neumaier summation, separately for real and imaginary parts.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

double wedge_top_coefficient(std::span<const OneOneForm> forms) {
  const int n = static_cast<int>(forms.size());
  if (n < 1 || n > kMaxOracleDim) {
    throw std::invalid_argument("wedge_top_coefficient: n must be in 1.." +
                                std::to_string(kMaxOracleDim) + ", got " + std::to_string(n));
  }
  for (const auto& f : forms) {
    if (f.coefficients.dim() != n) {
      throw std::invalid_argument("wedge_top_coefficient: need exactly n forms of dimension n");
    }
  }

  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<int> signs;
  signs.reserve(perms.size());
  for (const auto& q : perms) signs.push_back(permutation_sign(q));

  CompensatedSum re;
  CompensatedSum im;
  double magnitude = 0.0;
  for (std::size_t s = 0; s < perms.size(); ++s) {
    for (std::size_t t = 0; t < perms.size(); ++t) {
      Complex term = static_cast<double>(signs[s] * signs[t]);
      for (int j = 0; j < n; ++j) {
        const auto sj = perms[s][static_cast<std::size_t>(j)];
        const auto tj = perms[t][static_cast<std::size_t>(j)];
        term *= forms[static_cast<std::size_t>(j)].coefficients(sj, tj);
      }
      re.add(term.real());
      im.add(term.imag());
      magnitude = std::max(magnitude, std::abs(term));
    }
  }
  const double imag = im.value();
  if (std::abs(imag) > 1e-12 * std::max(1.0, magnitude * static_cast<double>(perms.size()))) {
    throw std::logic_error("wedge_top_coefficient: non-vanishing imaginary part " +
                           std::to_string(imag));
  }
  return re.value();
}

double normalization_constant(int n, int m, std::span<const double> generic_diagonal) {
  if (m < 1 || m > n || n > kMaxOracleDim) {
    throw std::invalid_argument("normalization_constant: need 1 <= m <= n <= 5");
  }
  if (static_cast<int>(generic_diagonal.size()) != n) {
    throw std::invalid_argument("normalization_constant: diagonal must have length n");
  }
  const double sm = sigma_k(generic_diagonal, m);
  if (std::abs(sm) < 1e-12) throw std::invalid_argument("normalization_constant: sigma_m vanishes");
  std::vector<OneOneForm> forms;
  for (int j = 0; j < m; ++j) forms.push_back({HermitianMatrix::diagonal(generic_diagonal)});
  for (int j = m; j < n; ++j) forms.push_back({HermitianMatrix::identity(n)});
  return wedge_top_coefficient(forms) / sm;
}

double normalization_constant(int n, int m) {
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(j)] = 1.0 + 0.37 * j + 0.05 * j * j;
  return normalization_constant(n, m, d);
}

}  // namespace mhess::forms
