#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mhess/hermitian.hpp"

namespace mhess {

// Coordinates: x has 2n real entries, z_j = x[2j] + i x[2j+1].

/// c
struct ConstantTerm {
  double value = 0.0;
};

/// sum_j |z_j|^2
struct QuadraticTerm {};

/// Re(c * prod_j z_j^{e_j}); pluriharmonic.
struct HolomorphicMonomialTerm {
  Complex coefficient{1.0, 0.0};
  std::vector<int> exponents;
};

/// sum_j cos(2 pi x_j) cos(2 pi y_j)
struct TrigProductTerm {};

/// cos(2 pi <k, x> + phase) over the 2n real axes, k integral.
struct TrigWaveTerm {
  std::vector<int> wave;
  double phase = 0.0;
};

/// M_eps(c_i L(z_i), c_j L(z_j)) with L(z) = log(|z|^2 + eps^2) / 2 and the
/// smooth max M_eps(a, b) = (a + b + sqrt((a - b)^2 + eps^2)) / 2.
struct LogMaxTerm {
  double coef_i = 1.0;
  double coef_j = 1.0;
  int i = 0;
  int j = 1;
  double eps = 0.1;
};

/// log(|z_i|^2 + |z_j|^2 + eps^2) / 2
struct LogNormTerm {
  int i = 0;
  int j = 1;
  double eps = 0.1;
};

/// Finite linear combination of closed-form terms. Periodic iff every term
/// is 1-periodic in each real axis.
class ClosedFormPotential {
 public:
  using Kind = std::variant<ConstantTerm, QuadraticTerm, HolomorphicMonomialTerm, TrigProductTerm,
                            TrigWaveTerm, LogMaxTerm, LogNormTerm>;
  struct Term {
    double scale = 1.0;
    Kind kind;
  };

  ClosedFormPotential() = default;

  static ClosedFormPotential zero() { return {}; }
  static ClosedFormPotential constant(double c);
  static ClosedFormPotential quadratic(double c);
  static ClosedFormPotential holomorphic_monomial(Complex c, std::vector<int> exponents);
  static ClosedFormPotential trig_product(double c);
  static ClosedFormPotential trig_wave(double c, std::vector<int> wave, double phase = 0.0);
  static ClosedFormPotential log_max(const LogMaxTerm& term, double scale = 1.0);
  static ClosedFormPotential log_norm(const LogNormTerm& term, double scale = 1.0);

  ClosedFormPotential& operator+=(const ClosedFormPotential& other);
  ClosedFormPotential& operator*=(double s);
  friend ClosedFormPotential operator+(ClosedFormPotential a, const ClosedFormPotential& b) {
    return a += b;
  }
  friend ClosedFormPotential operator*(double s, ClosedFormPotential a) { return a *= s; }

  bool periodic() const;
  /// Smallest complex dimension the terms make sense in.
  int min_dim() const;
  const std::vector<Term>& terms() const noexcept { return terms_; }

  double operator()(std::span<const double> x) const;

  std::string describe() const;

 private:
  void add(double scale, Kind kind);

  std::vector<Term> terms_;
};

/// M_eps(a, b).
double smooth_max(double a, double b, double eps);

}  // namespace mhess
