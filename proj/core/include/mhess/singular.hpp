#pragma once

// Regularized log-max potentials in a pair of complex coordinates and their
// singular Hessian masses near {z_i = z_j = 0}.
//
// u_k = M_eps(L(z_i)/k, k^2 L(z_j)),  v_k = M_eps(k^2 L(z_i), L(z_j)/k),
// L(z) = log(|z|^2 + eps^2)/2. Both depend on (|z_i|, |z_j|) only, so every
// mass integral reduces to the quarter plane (r1, r2) with Jacobian
// (2 pi r1)(2 pi r2). The quadrature runs in t = log r with midpoint cells.

#include <span>
#include <string>
#include <vector>

#include "mhess/potential.hpp"
#include "mhess/report.hpp"

namespace mhess {

enum class Orientation { u, v };

struct LogMaxSpec {
  double k = 2.0;
  double eps = 0.025;
  int i = 0;
  int j = 1;
  Orientation orientation = Orientation::u;

  /// Coefficient on log|z_i| and on log|z_j|.
  double coef_i() const;
  double coef_j() const;
  LogMaxTerm term() const;
};

/// Throws std::invalid_argument unless k > 0, eps > 0 and i != j.
void validate(const LogMaxSpec& spec);

ClosedFormPotential regularized_potential(const LogMaxSpec& spec);

/// dd^c of a function of (r1, r2) at the point (r1, 0, r2, 0): a real 2 x 2
/// matrix {{h11, h12}, {h12, h22}}. At other angles h12 picks up a phase.
struct RadialHessian {
  double h11 = 0.0;
  double h22 = 0.0;
  double h12 = 0.0;
};

RadialHessian radial_hessian(const LogMaxSpec& spec, double r1, double r2);

/// The largest polydisc radius accepted. u_k and v_k also have mixed mass on
/// the torus |z_i| = |z_j| = 1 where their kinks cross; radii at or beyond
/// that torus would pick it up.
inline constexpr double kMaxMassRadius = 0.96;

struct RadialQuadrature {
  /// Polydisc radius: max(|z_i|, |z_j|) < radius.
  double radius = 0.95;
  /// The log grid starts at log(eps) - depth.
  double depth = 6.0;
  /// Cell width in t along an axis is eps / (div * max(1, c)) where c is the
  /// largest log coefficient on that axis, so h <= eps / div.
  double div = 8.0;
};

/// Raw mass of (dd^c u)(dd^c v) over the polydisc in (z_i, z_j), in the
/// convention dd^c |z|^2 = identity. With spec_v == spec_u this is the
/// Monge-Ampere mass. Throws Refusal when radius > kMaxMassRadius.
double singular_mass(const LogMaxSpec& spec_u, const LogMaxSpec& spec_v,
                     const RadialQuadrature& q = {});

/// Raw mass of dd^c L over the disc of radius R by the same quadrature.
double calibration_mass_1d(double eps, const RadialQuadrature& q = {});

/// (pi/2) R^2 / (R^2 + eps^2).
double calibration_mass_1d_exact(double eps, double radius);

/// (2 pi / m1)^2: turns raw two-fold masses into (2 pi)^2-scaled ones.
double convention_constant(double eps, const RadialQuadrature& q = {});

/// Reference values (2 pi)^2 k / 2 and (2 pi)^2 / (2 k^2).
double reference_a(double k);
double reference_b(double k);

struct MassRow {
  double eps = 0.0;
  double h = 0.0;
  double mass_a = 0.0;
  double mass_b = 0.0;
  double ratio = 0.0;
};

/// Rows sorted by eps descending.
struct MassTable {
  double k = 0.0;
  std::vector<MassRow> rows;

  std::string to_csv() const;
};

/// a = mass of u_k alone, b = mixed mass of (u_k, v_k), for every eps.
MassTable mass_table(double k, std::span<const double> eps_seq, const RadialQuadrature& q = {});

/// Default eps sequence {0.1, 0.05, 0.025}.
std::vector<double> default_eps_sequence();

/// Relative margin that separates a violation from equality.
inline constexpr double kViolationMargin = 0.05;

/// Measures a = sqrt(a_u a_v) and b at the finest eps. The mixed inequality
/// at the origin asks for b >= a. A violation is b < (1 - margin) a.
/// Predicted outcome: violation for k > 1, equality for k = 1, and no
/// violation for k < 1. Pass iff the measurement matches the prediction.
CheckReport verify_violation(double k, std::span<const double> eps_seq,
                             const RadialQuadrature& q = {});

/// Ratio law and calibration: for each k, a/b within rel_tol of k^3 and
/// c_conv a, c_conv b within rel_tol of the reference values.
/// Tables are judged at their finest eps.
CheckReport check_ratio_law(std::span<const double> ks, std::span<const double> eps_seq,
                            double rel_tol = 0.05, const RadialQuadrature& q = {});
CheckReport check_ratio_law(std::span<const MassTable> tables, double rel_tol = 0.05);
CheckReport check_calibration(std::span<const double> ks, double eps, double rel_tol = 0.05,
                              const RadialQuadrature& q = {});
/// c_conv is measured at the common finest eps of the tables.
CheckReport check_calibration(std::span<const MassTable> tables, double rel_tol = 0.05,
                              const RadialQuadrature& q = {});

enum class W12Subject { log_max, log_norm, quadratic };

struct W12Settings {
  /// Euclidean ball |z_i|^2 + |z_j|^2 < radius^2. The kink surface of u_k
  /// meets the axis z_i = 0 near |z_j| = eps^{1/k^3}; a smaller ball misses it
  /// and only sees one log branch, whose energy grows like log(1/eps).
  double radius = 0.95;
  double depth = 6.0;
  double div = 4.0;
};

/// Integral of |grad u|^2 over the ball. log_norm is L(|(z_i, z_j)|) and
/// quadratic is |z_i|^2 + |z_j|^2 (no eps dependence).
double gradient_norm_squared(W12Subject subject, const LogMaxSpec& spec,
                             const W12Settings& w = {});

/// pi^2 [S - 2e log(1 + S/e) + e - e^2/(S + e)], e = eps^2, S = radius^2.
double gradient_norm_squared_log_norm_exact(double eps, double radius);

/// Boundedness along a decreasing eps sequence: increments keep one sign and
/// shrink strictly, and the geometric tail gives a finite limit estimate.
/// For log_max the singular a-mass must also stay within mass_rel_tol of its
/// Aitken limit at every eps.
CheckReport w12_boundedness(W12Subject subject, const LogMaxSpec& spec,
                            std::span<const double> eps_seq, const W12Settings& w = {},
                            const RadialQuadrature& q = {}, double mass_rel_tol = 0.05);

/// x_2 - (x_2 - x_1)^2 / ((x_2 - x_1) - (x_1 - x_0)); falls back to x_2 when
/// the denominator vanishes.
double aitken_limit(double x0, double x1, double x2);

}  // namespace mhess
