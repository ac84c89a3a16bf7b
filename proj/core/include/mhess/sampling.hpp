#pragma once

// Random Hermitian matrices for property checks and the CLI Garding suite.

#include <random>

#include "mhess/hermitian.hpp"

namespace mhess::sampling {

/// Entries with independent standard normal real and imaginary parts.
HermitianMatrix gaussian_hermitian(std::mt19937_64& rng, int n);

/// Haar-distributed unitary via QR of a complex Gaussian matrix.
SmallMatrix haar_unitary(std::mt19937_64& rng, int n);

/// U diag(lambda) U^* with lambda drawn uniformly from [-1, 3]^n and
/// rejected until sigma_1..sigma_m >= 0 (relative to the identity metric).
HermitianMatrix cone_matrix(std::mt19937_64& rng, int n, int m);

/// A random positive definite metric L L^* + n/4 I.
Metric random_metric(std::mt19937_64& rng, int n);

}  // namespace mhess::sampling
