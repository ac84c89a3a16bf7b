#pragma once

// Pointwise algebra of the complex Hessian: eigenvalues relative to a metric,
// elementary symmetric functions, Garding cone membership and the normalized
// (mixed) Hessian densities.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mhess/report.hpp"

namespace mhess {

inline constexpr int kMaxDim = 8;

using Complex = std::complex<double>;
/// Stack-allocated n x n complex matrix, n <= kMaxDim.
using SmallMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

/// n x n self-adjoint complex matrix. Construction symmetrizes (A + A^*)/2,
/// so the stored entries are exactly Hermitian.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const SmallMatrix& entries);

  static HermitianMatrix identity(int n);
  static HermitianMatrix zero(int n);
  static HermitianMatrix diagonal(std::span<const double> d);
  static HermitianMatrix diagonal(std::initializer_list<double> d);

  int dim() const noexcept { return static_cast<int>(a_.rows()); }
  const SmallMatrix& entries() const noexcept { return a_; }
  Complex operator()(int p, int q) const { return a_(p, q); }

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double s);

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, SmallMatrix entries) : a_(std::move(entries)) {}

  SmallMatrix a_;
};

/// Constant-coefficient Kaehler metric: a positive definite Hermitian matrix
/// together with the inverse of its Cholesky factor.
class Metric {
 public:
  explicit Metric(const HermitianMatrix& g);

  static Metric identity(int n);

  int dim() const noexcept { return g_.dim(); }
  const HermitianMatrix& matrix() const noexcept { return g_; }
  bool is_identity() const noexcept { return identity_; }

  /// L^{-1} A L^{-*} where g = L L^*. Its ordinary eigenvalues are the
  /// eigenvalues of A with respect to g.
  HermitianMatrix reduce(const HermitianMatrix& a) const;

 private:
  HermitianMatrix g_;
  SmallMatrix inverse_factor_;
  bool identity_;
};

struct EigenSpectrum {
  std::vector<double> values;  // ascending
};

/// k-th elementary symmetric polynomial, sigma_0 = 1.
double sigma_k(std::span<const double> lambda, int k);

/// sigma_0 .. sigma_n in one pass.
std::vector<double> elementary_symmetric(std::span<const double> lambda);

double binomial(int n, int k);

/// Spectrum of the pencil (A, g) by Cholesky reduction and a self-adjoint
/// eigensolve.
EigenSpectrum generalized_eigenvalues(const HermitianMatrix& a, const Metric& g);

/// sigma_0..sigma_n of the eigenvalues of A relative to g, read off the
/// characteristic polynomial of the reduced matrix (Faddeev-LeVerrier), plus
/// the Frobenius norm of the reduced matrix which bounds max |lambda|.
struct PointSigmas {
  std::array<double, kMaxDim + 1> sigma{};
  int n = 0;
  double scale = 0.0;
};

PointSigmas point_sigmas(const HermitianMatrix& a, const Metric& g);

/// Cone tolerance: sigma_k >= -absolute * scale^k counts as inside, which
/// makes the closed cone test invariant under rescaling A.
struct ConeTolerance {
  double absolute = 1e-12;

  double for_degree(double scale, int k) const;
};

struct ConeStatus {
  bool inside = true;
  int worst_k = 0;
  /// min over k of sigma_k / C(n,k): the deficit is negative when outside.
  double worst_margin = 0.0;
};

ConeStatus cone_status(const PointSigmas& s, int m, ConeTolerance tol = {});

bool is_m_sh_point(const HermitianMatrix& a, const Metric& g, int m, ConeTolerance tol = {});

/// Density of A^m wedge omega^{n-m} against omega^n: sigma_m(lambda)/C(n,m).
/// hessian_density(g, g, m) == 1.
double hessian_density(const HermitianMatrix& a, const Metric& g, int m);

/// Symmetric multilinear polarization of hessian_density over sign patterns;
/// m = as.size(). Its diagonal equals hessian_density.
double mixed_hessian_density(std::span<const HermitianMatrix> as, const Metric& g);

/// Garding-type mixed inequality at a point. Throws Refusal naming the first
/// argument that is not in the closed cone.
CheckReport garding_mixed_check(std::span<const HermitianMatrix> as, const Metric& g,
                                double tol = 1e-9, ConeTolerance cone_tol = {});

}  // namespace mhess
