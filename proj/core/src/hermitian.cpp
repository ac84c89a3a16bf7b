#include "mhess/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "mhess/errors.hpp"

namespace mhess {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) {
    throw std::invalid_argument("matrix dimension must be in 1.." + std::to_string(kMaxDim) +
                                ", got " + std::to_string(n));
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(const SmallMatrix& entries) {
  if (entries.rows() != entries.cols()) {
    throw std::invalid_argument("HermitianMatrix needs a square matrix");
  }
  check_dim(static_cast<int>(entries.rows()));
  a_ = 0.5 * (entries + entries.adjoint());
}

HermitianMatrix HermitianMatrix::identity(int n) {
  check_dim(n);
  return HermitianMatrix(Trusted{}, SmallMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(int n) {
  check_dim(n);
  return HermitianMatrix(Trusted{}, SmallMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  const int n = static_cast<int>(d.size());
  check_dim(n);
  SmallMatrix a = SmallMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = d[static_cast<std::size_t>(i)];
  return HermitianMatrix(Trusted{}, std::move(a));
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  if (other.dim() != dim()) throw std::invalid_argument("HermitianMatrix dimension mismatch");
  a_ += other.a_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  a_ *= s;
  return *this;
}

Metric::Metric(const HermitianMatrix& g) : g_(g), identity_(g.entries().isIdentity(0.0)) {
  const int n = g.dim();
  if (identity_) {
    inverse_factor_ = SmallMatrix::Identity(n, n);
    return;
  }
  Eigen::SelfAdjointEigenSolver<SmallMatrix> eig(g.entries(), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 0.0)) {
    throw std::invalid_argument("metric must be positive definite");
  }
  Eigen::LLT<SmallMatrix> llt(g.entries());
  if (llt.info() != Eigen::Success) throw std::invalid_argument("metric Cholesky failed");
  SmallMatrix lower = llt.matrixL();
  inverse_factor_ = lower.triangularView<Eigen::Lower>().solve(SmallMatrix::Identity(n, n));
}

Metric Metric::identity(int n) { return Metric(HermitianMatrix::identity(n)); }

HermitianMatrix Metric::reduce(const HermitianMatrix& a) const {
  if (a.dim() != dim()) throw std::invalid_argument("matrix and metric dimensions differ");
  if (identity_) return a;
  return HermitianMatrix(inverse_factor_ * a.entries() * inverse_factor_.adjoint());
}

double sigma_k(std::span<const double> lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  if (k < 0 || k > n) {
    throw std::invalid_argument("sigma_k: k=" + std::to_string(k) + " outside 0.." +
                                std::to_string(n));
  }
  return elementary_symmetric(lambda)[static_cast<std::size_t>(k)];
}

std::vector<double> elementary_symmetric(std::span<const double> lambda) {
  // e_k(x_1..x_j) = e_k(x_1..x_{j-1}) + x_j e_{k-1}(x_1..x_{j-1})
  std::vector<double> e(lambda.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    for (std::size_t k = j + 1; k >= 1; --k) e[k] += lambda[j] * e[k - 1];
  }
  return e;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

EigenSpectrum generalized_eigenvalues(const HermitianMatrix& a, const Metric& g) {
  if (a.dim() != g.dim()) throw std::invalid_argument("generalized_eigenvalues: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<SmallMatrix> eig(g.reduce(a).entries(), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw std::runtime_error("self-adjoint eigensolve failed");
  EigenSpectrum out;
  out.values.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + a.dim());
  std::sort(out.values.begin(), out.values.end());
  return out;
}

namespace {

PointSigmas sigmas_of_reduced(const SmallMatrix& b) {
  const int n = static_cast<int>(b.rows());
  PointSigmas out;
  out.n = n;
  out.scale = b.norm();
  out.sigma[0] = 1.0;
  if (n == 1) {
    out.sigma[1] = b(0, 0).real();
    return out;
  }
  if (n == 2) {
    out.sigma[1] = b(0, 0).real() + b(1, 1).real();
    out.sigma[2] = b(0, 0).real() * b(1, 1).real() - std::norm(b(0, 1));
    return out;
  }

  // Faddeev-LeVerrier: det(t I - B) = sum_i c_i t^i, sigma_k = (-1)^k c_{n-k}.
  // M_1 = I, M_k = B M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(B M_k) / k.
  constexpr int K = kMaxDim;
  std::array<Complex, K * K> bm{};
  std::array<Complex, K * K> mk{};
  std::array<Complex, K + 1> c{};
  c[static_cast<std::size_t>(n)] = 1.0;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) bm[static_cast<std::size_t>(p * K + q)] = b(p, q);
  }
  Complex tr = 0.0;
  for (int p = 0; p < n; ++p) tr += bm[static_cast<std::size_t>(p * K + p)];
  c[static_cast<std::size_t>(n - 1)] = -tr;
  for (int k = 2; k <= n; ++k) {
    mk = bm;
    for (int p = 0; p < n; ++p) mk[static_cast<std::size_t>(p * K + p)] += c[static_cast<std::size_t>(n - k + 1)];
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        Complex acc = 0.0;
        for (int r = 0; r < n; ++r) acc += b(p, r) * mk[static_cast<std::size_t>(r * K + q)];
        bm[static_cast<std::size_t>(p * K + q)] = acc;
      }
    }
    tr = 0.0;
    for (int p = 0; p < n; ++p) tr += bm[static_cast<std::size_t>(p * K + p)];
    c[static_cast<std::size_t>(n - k)] = -tr / static_cast<double>(k);
  }
  for (int k = 1; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out.sigma[static_cast<std::size_t>(k)] = sign * c[static_cast<std::size_t>(n - k)].real();
  }
  return out;
}

}  // namespace

PointSigmas point_sigmas(const HermitianMatrix& a, const Metric& g) {
  return sigmas_of_reduced(g.reduce(a).entries());
}

double ConeTolerance::for_degree(double scale, int k) const {
  return absolute * std::pow(scale, k);
}

ConeStatus cone_status(const PointSigmas& s, int m, ConeTolerance tol) {
  if (m < 1 || m > s.n) throw std::invalid_argument("cone_status: m outside 1..n");
  ConeStatus status;
  status.worst_margin = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= m; ++k) {
    const double sk = s.sigma[static_cast<std::size_t>(k)];
    const double normalized = sk / binomial(s.n, k);
    if (normalized < status.worst_margin) {
      status.worst_margin = normalized;
      status.worst_k = k;
    }
    if (sk < -tol.for_degree(s.scale, k)) status.inside = false;
  }
  return status;
}

bool is_m_sh_point(const HermitianMatrix& a, const Metric& g, int m, ConeTolerance tol) {
  if (a.dim() != g.dim()) throw std::invalid_argument("is_m_sh_point: dimension mismatch");
  if (m < 1 || m > a.dim()) throw std::invalid_argument("is_m_sh_point: m outside 1..n");
  return cone_status(point_sigmas(a, g), m, tol).inside;
}

double hessian_density(const HermitianMatrix& a, const Metric& g, int m) {
  if (a.dim() != g.dim()) throw std::invalid_argument("hessian_density: dimension mismatch");
  if (m < 1 || m > a.dim()) throw std::invalid_argument("hessian_density: m outside 1..n");
  return point_sigmas(a, g).sigma[static_cast<std::size_t>(m)] / binomial(a.dim(), m);
}

double mixed_hessian_density(std::span<const HermitianMatrix> as, const Metric& g) {
  const int m = static_cast<int>(as.size());
  const int n = g.dim();
  if (m < 1 || m > n) {
    throw std::invalid_argument("mixed_hessian_density: need 1..n matrices, got " +
                                std::to_string(m));
  }
  std::vector<HermitianMatrix> reduced;
  reduced.reserve(as.size());
  for (const auto& a : as) reduced.push_back(g.reduce(a));

  // Sign polarization: sum over eps in {+-1}^m of (prod eps) sigma_m(sum eps_i A_i)
  // equals 2^m m! times the mixed form. eps_0 = +1 covers every pair {eps, -eps}
  // since sigma_m is homogeneous of degree m. Far less cancellation than
  // inclusion-exclusion over subset sums.
  long double acc = 0.0L;
  const unsigned signs = 1u << (m - 1);
  for (unsigned mask = 0; mask < signs; ++mask) {
    HermitianMatrix sum = reduced[0];
    int negatives = 0;
    for (int i = 1; i < m; ++i) {
      const auto& a = reduced[static_cast<std::size_t>(i)];
      if (mask & (1u << (i - 1))) {
        sum += -1.0 * a;
        ++negatives;
      } else {
        sum += a;
      }
    }
    const double sm = sigmas_of_reduced(sum.entries()).sigma[static_cast<std::size_t>(m)];
    acc += (negatives % 2 == 0) ? sm : -sm;
  }
  double factorial = 1.0;
  for (int i = 2; i <= m; ++i) factorial *= i;
  return static_cast<double>(acc) / (static_cast<double>(signs) * factorial * binomial(n, m));
}

CheckReport garding_mixed_check(std::span<const HermitianMatrix> as, const Metric& g, double tol,
                                ConeTolerance cone_tol) {
  const int m = static_cast<int>(as.size());
  if (m < 1 || m > g.dim()) throw std::invalid_argument("garding_mixed_check: need 1..n matrices");
  std::vector<double> densities;
  for (int i = 0; i < m; ++i) {
    const auto& a = as[static_cast<std::size_t>(i)];
    if (!is_m_sh_point(a, g, m, cone_tol)) {
      throw Refusal("garding_mixed_check: argument " + std::to_string(i) +
                        " is not in the closed Garding cone for m=" + std::to_string(m),
                    nlohmann::json{{"argument", i}});
    }
    densities.push_back(hessian_density(a, g, m));
  }
  double geometric = 1.0;
  for (double d : densities) geometric *= std::pow(std::max(d, 0.0), 1.0 / m);
  const double mixed = mixed_hessian_density(as, g);

  CheckReport report;
  report.suite = "garding-mixed";
  report.worst_margin = mixed - geometric;
  report.tolerance = tol;
  report.outcome = report.worst_margin >= -tol ? Outcome::pass : Outcome::fail;
  if (!report.passed()) report.location = nlohmann::json{{"tuple_size", m}};
  report.provenance.n = g.dim();
  report.details = {{"mixed_density", mixed}, {"geometric_mean", geometric},
                    {"densities", densities}};
  return report;
}

}  // namespace mhess
