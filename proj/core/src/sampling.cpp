#include "mhess/sampling.hpp"

#include <Eigen/QR>

namespace mhess::sampling {

namespace {

SmallMatrix gaussian_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SmallMatrix a(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) a(p, q) = Complex(normal(rng), normal(rng));
  }
  return a;
}

}  // namespace

HermitianMatrix gaussian_hermitian(std::mt19937_64& rng, int n) {
  return HermitianMatrix(gaussian_matrix(rng, n));
}

SmallMatrix haar_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<SmallMatrix> qr(gaussian_matrix(rng, n));
  SmallMatrix q = qr.householderQ();
  const SmallMatrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

HermitianMatrix cone_matrix(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> uniform(-1.0, 3.0);
  std::vector<double> lambda(static_cast<std::size_t>(n));
  for (;;) {
    for (auto& l : lambda) l = uniform(rng);
    const auto e = elementary_symmetric(lambda);
    bool inside = true;
    for (int k = 1; k <= m; ++k) inside = inside && e[static_cast<std::size_t>(k)] >= 0.0;
    if (inside) break;
  }
  const SmallMatrix u = haar_unitary(rng, n);
  SmallMatrix d = SmallMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = lambda[static_cast<std::size_t>(i)];
  return HermitianMatrix(u * d * u.adjoint());
}

Metric random_metric(std::mt19937_64& rng, int n) {
  const SmallMatrix l = 0.5 * gaussian_matrix(rng, n);
  SmallMatrix g = l * l.adjoint();
  g.diagonal().array() += 0.25 * n;
  return Metric(HermitianMatrix(g));
}

}  // namespace mhess::sampling
