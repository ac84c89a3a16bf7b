#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "mhess/forms_oracle.hpp"
#include "mhess/hermitian.hpp"
#include "mhess/sampling.hpp"
#include "oracles.hpp"

using namespace mhess;
using forms::OneOneForm;

TEST(Wedge, IdentityFormsGiveFactorial) {
  for (int n = 1; n <= forms::kMaxOracleDim; ++n) {
    const std::vector<OneOneForm> fs(static_cast<std::size_t>(n), OneOneForm{HermitianMatrix::identity(n)});
    EXPECT_EQ(forms::wedge_top_coefficient(fs), static_cast<double>(oracle::factorial(n)));
  }
}

TEST(Wedge, DiagonalFormsGivePermanent) {
  gen::Gen g(71);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = g.integer(1, 5);
    std::vector<std::vector<double>> diag;
    std::vector<OneOneForm> fs;
    for (int j = 0; j < n; ++j) {
      diag.push_back(g.vector(n, -2.0, 2.0));
      fs.push_back({HermitianMatrix::diagonal(diag.back())});
    }
    EXPECT_NEAR(forms::wedge_top_coefficient(fs), oracle::permanent(diag), 1e-11);
  }
}

TEST(Wedge, SingleFormIsDeterminantTimesFactorial) {
  gen::Gen g(73);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = g.integer(1, 5);
    const HermitianMatrix a = g.hermitian(n);
    const std::vector<OneOneForm> fs(static_cast<std::size_t>(n), OneOneForm{a});
    const double det = oracle::determinant(g.to_cmat(a)).real();
    EXPECT_NEAR(forms::wedge_top_coefficient(fs), oracle::factorial(n) * det,
                1e-10 * std::max(1.0, std::abs(static_cast<double>(oracle::factorial(n)) * det)));
  }
}

TEST(Wedge, UnitaryInvariance) {
  gen::Gen g(79);
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = g.integer(2, 4);
    const SmallMatrix u = sampling::haar_unitary(rng, n);
    std::vector<OneOneForm> fs, rotated;
    for (int j = 0; j < n; ++j) {
      const HermitianMatrix a = g.hermitian(n);
      fs.push_back({a});
      rotated.push_back({HermitianMatrix(u * a.entries() * u.adjoint())});
    }
    EXPECT_NEAR(forms::wedge_top_coefficient(fs), forms::wedge_top_coefficient(rotated), 1e-10);
  }
}

TEST(Wedge, RejectsWrongShapes) {
  const std::vector<OneOneForm> two(2, OneOneForm{HermitianMatrix::identity(3)});
  EXPECT_THROW(forms::wedge_top_coefficient(two), std::invalid_argument);
  const std::vector<OneOneForm> six(6, OneOneForm{HermitianMatrix::identity(6)});
  EXPECT_THROW(forms::wedge_top_coefficient(six), std::invalid_argument);
}

TEST(Normalization, FactorialProduct) {
  for (int n = 1; n <= forms::kMaxOracleDim; ++n) {
    for (int m = 1; m <= n; ++m) {
      const double expected = static_cast<double>(oracle::factorial(m) * oracle::factorial(n - m));
      EXPECT_NEAR(forms::normalization_constant(n, m), expected, 1e-10 * expected);
    }
  }
}

TEST(Normalization, IndependentOfDiagonal) {
  gen::Gen g(83);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = g.integer(1, 5);
    const int m = g.integer(1, n);
    const auto d = g.vector(n, 0.2, 3.0);
    const double expected = static_cast<double>(oracle::factorial(m) * oracle::factorial(n - m));
    EXPECT_NEAR(forms::normalization_constant(n, m, d), expected, 1e-9 * expected);
  }
}

TEST(Normalization, RejectsVanishingSigma) {
  const std::vector<double> d{1.0, -1.0};
  EXPECT_THROW(forms::normalization_constant(2, 1, d), std::invalid_argument);
}

// The wedge of m general forms with n-m identities equals n! times the mixed
// density: the exterior-algebra route against the subset polarization.
TEST(Wedge, AgreesWithMixedDensity) {
  gen::Gen g(89);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = g.integer(1, 5);
    const int m = g.integer(1, n);
    std::vector<HermitianMatrix> as;
    std::vector<OneOneForm> fs;
    for (int j = 0; j < m; ++j) {
      as.push_back(g.hermitian(n));
      fs.push_back({as.back()});
    }
    for (int j = m; j < n; ++j) fs.push_back({HermitianMatrix::identity(n)});
    const double wedge = forms::wedge_top_coefficient(fs);
    const double mixed = mixed_hessian_density(as, Metric::identity(n));
    EXPECT_NEAR(wedge, oracle::factorial(n) * mixed, 1e-9 * std::max(1.0, std::abs(wedge)));
  }
}
