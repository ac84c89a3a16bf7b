#pragma once

// Reference computations that share no code path with the library: subset
// enumeration, Gaussian-elimination determinants with root bracketing, Ryser
// permanents and a few closed-form integrals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using CMat = std::vector<std::vector<cd>>;

/// sum over all k-subsets of the product of their entries.
inline double sigma_by_subsets(const std::vector<double>& x, int k) {
  const int n = static_cast<int>(x.size());
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) p *= x[static_cast<std::size_t>(i)];
    }
    total += p;
  }
  return total;
}

inline long double factorial(int n) {
  long double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double binom(int n, int k) {
  return static_cast<double>(factorial(n) / (factorial(k) * factorial(n - k)));
}

/// det by Gaussian elimination with partial pivoting.
inline cd determinant(CMat a) {
  const std::size_t n = a.size();
  cd det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const cd f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Real roots of lambda -> Re det(A - lambda g) on [-bound, bound], found by
/// scanning for sign changes and bisecting. Assumes simple roots.
inline std::vector<double> pencil_roots(const CMat& a, const CMat& g, double bound,
                                        int scan = 20000) {
  const std::size_t n = a.size();
  const auto p = [&](double lambda) {
    CMat m = a;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= lambda * g[i][j];
    }
    return determinant(m).real();
  };
  std::vector<double> roots;
  double x0 = -bound, f0 = p(x0);
  for (int s = 1; s <= scan; ++s) {
    const double x1 = -bound + 2.0 * bound * s / scan;
    const double f1 = p(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Ryser's formula for the permanent of a real square matrix.
inline double permanent(const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (mask & (1u << j)) row += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      prod *= row;
    }
    total += ((n - __builtin_popcount(mask)) % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  return total;
}

/// h sum_{i < N/2} (1 + sin(2 pi i h)) = 1/2 + h cot(pi h).
inline double half_period_sine_sum(int N) {
  const double h = 1.0 / N;
  return 0.5 + h / std::tan(std::numbers::pi * h);
}

/// Central-difference energy of cos(2 pi x_1) on the torus:
/// 4 pi^2 * (1/2) * (sin(2 pi h) / (2 pi h))^2, which tends to 2 pi^2.
inline double discrete_cosine_energy(int N) {
  const double h = 1.0 / N;
  const double s = std::sin(2.0 * std::numbers::pi * h) / (2.0 * std::numbers::pi * h);
  return 2.0 * std::numbers::pi * std::numbers::pi * s * s;
}

}  // namespace oracle
