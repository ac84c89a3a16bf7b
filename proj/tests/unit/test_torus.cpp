#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "generators.hpp"
#include "mhess/errors.hpp"
#include "mhess/field_io.hpp"
#include "mhess/instances.hpp"
#include "mhess/measures.hpp"
#include "mhess/parallel.hpp"
#include "mhess/potential.hpp"
#include "mhess/torus.hpp"
#include "oracles.hpp"

using namespace mhess;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mhess-tests";
  fs::create_directories(dir);
  return dir / name;
}

double max_abs_entry(const HermitianMatrix& a) { return a.entries().cwiseAbs().maxCoeff(); }

}  // namespace

TEST(TorusGrid, Shape) {
  const TorusGrid g(2, 16);
  EXPECT_EQ(g.axes(), 4);
  EXPECT_EQ(g.size(), 65536u);
  EXPECT_DOUBLE_EQ(g.cell_volume(), std::pow(1.0 / 16, 4));
}

TEST(TorusGrid, RejectsBadSizes) {
  EXPECT_THROW(TorusGrid(2, 7), std::invalid_argument);
  EXPECT_THROW(TorusGrid(2, 6), std::invalid_argument);
  EXPECT_THROW(TorusGrid(0, 16), std::invalid_argument);
  EXPECT_THROW(TorusGrid(3, 128), std::invalid_argument);
}

TEST(TorusGrid, IndexRoundTrip) {
  const TorusGrid g(2, 8);
  for (std::size_t i = 0; i < g.size(); i += 37) {
    const auto multi = g.multi_index(i);
    EXPECT_EQ(g.linear_index(multi), i);
  }
  const std::vector<int> bad{0, 0, 8, 0};
  EXPECT_THROW(g.linear_index(bad), std::out_of_range);
}

TEST(TorusGrid, ChartMargin) {
  const TorusGrid g(1, 8);
  const std::vector<int> edge{1, 4};
  const std::vector<int> inside{2, 5};
  EXPECT_FALSE(g.is_valid(g.linear_index(edge), Domain::chart));
  EXPECT_TRUE(g.is_valid(g.linear_index(inside), Domain::chart));
  EXPECT_TRUE(g.is_valid(g.linear_index(edge), Domain::periodic));
}

TEST(Sample, RefusesNonPeriodicOnTorus) {
  const TorusGrid g(2, 8);
  EXPECT_THROW(sample(ClosedFormPotential::quadratic(1.0), g), Refusal);
  EXPECT_NO_THROW(sample(ClosedFormPotential::quadratic(1.0), g, Domain::chart));
}

TEST(Sample, RejectsTooSmallDimension) {
  EXPECT_THROW(sample(instances::coupled_trig(2), TorusGrid(1, 8)), std::invalid_argument);
}

TEST(Hessian, QuadraticIsIdentity) {
  const TorusGrid g(2, 16);
  const TorusField u = sample(ClosedFormPotential::quadratic(1.0), g, Domain::chart);
  for (std::size_t i = 0; i < g.size(); i += 101) {
    if (!g.is_valid(i, Domain::chart)) continue;
    const HermitianMatrix h = hessian_at(u, i);
    EXPECT_LT(max_abs_entry(h + (-1.0) * HermitianMatrix::identity(2)), 1e-9);
  }
}

TEST(Hessian, PluriharmonicPolynomialsVanish) {
  // Re(z1^2), Re(z1 z2), Re(i z1 z2) are quadratic, so central differences
  // are exact up to roundoff.
  const TorusGrid g(2, 16);
  for (const auto& p : {ClosedFormPotential::holomorphic_monomial({1, 0}, {2, 0}),
                        ClosedFormPotential::holomorphic_monomial({1, 0}, {1, 1}),
                        ClosedFormPotential::holomorphic_monomial({0, 1}, {1, 1})}) {
    const TorusField u = sample(p, g, Domain::chart);
    for (std::size_t i = 0; i < g.size(); i += 97) {
      if (!g.is_valid(i, Domain::chart)) continue;
      EXPECT_LT(max_abs_entry(hessian_at(u, i)), 1e-9) << p.describe();
    }
  }
}

TEST(Hessian, OffDiagonalConvention) {
  // u = x1 x2 + y1 y2 + (x1 y2 - y1 x2) / 2, so H_12 = 1/2 + i/4.
  const TorusGrid g(2, 16);
  std::vector<double> values(g.size());
  std::vector<double> x(4);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.coordinates(i, Domain::chart, x);
    values[i] = x[0] * x[2] + x[1] * x[3] + 0.5 * (x[0] * x[3] - x[1] * x[2]);
  }
  const TorusField u(g, Domain::chart, values);
  const std::vector<int> mid{8, 8, 8, 8};
  const HermitianMatrix h = hessian_at(u, g.linear_index(mid));
  EXPECT_NEAR(h(0, 1).real(), 0.5, 1e-12);
  EXPECT_NEAR(h(0, 1).imag(), 0.25, 1e-12);
  EXPECT_NEAR(h(0, 0).real(), 0.0, 1e-12);
}

TEST(Hessian, TrigProductSecondOrder) {
  // Exact: H_jj = -(2 pi)^2 c cos cos / 2 with symbol factor
  // (sin(pi h)/(pi h))^2 from the three-point stencil.
  const double c = 0.02;
  double prev = 0.0;
  for (int N : {16, 32, 64}) {
    const TorusGrid g(1, N);
    const TorusField u = sample(instances::trig_product(c), g);
    const double h = g.spacing();
    const double symbol = std::pow(std::sin(std::numbers::pi * h) / (std::numbers::pi * h), 2);
    double worst = 0.0;
    std::vector<double> x(2);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.coordinates(i, Domain::periodic, x);
      const double exact = -0.5 * std::pow(2 * std::numbers::pi, 2) * c * std::cos(2 * std::numbers::pi * x[0]) *
                           std::cos(2 * std::numbers::pi * x[1]);
      const double got = hessian_at(u, i)(0, 0).real();
      EXPECT_NEAR(got, exact * symbol, 1e-11);
      worst = std::max(worst, std::abs(got - exact));
    }
    if (prev > 0.0) {
      EXPECT_NEAR(prev / worst, 4.0, 0.1);
    }
    prev = worst;
  }
}

TEST(Hessian, ComplexHessianFieldMatchesPointwise) {
  const TorusGrid g(2, 8);
  const TorusField u = sample(instances::coupled_trig(2), g);
  const HessianField hf = complex_hessian(u);
  for (std::size_t i = 0; i < g.size(); i += 13) {
    EXPECT_LT(max_abs_entry(hf.at(i) + (-1.0) * hessian_at(u, i)), 1e-15);
  }
}

TEST(GradientNorm, CosineEnergyClosedForm) {
  for (int N : {8, 16, 32}) {
    const TorusGrid g(1, N);
    const TorusField u = sample(instances::axis_wave(1, 0, 1.0), g);
    EXPECT_NEAR(gradient_l2_norm_squared(u, RegionMask::full(g)), oracle::discrete_cosine_energy(N), 1e-12);
  }
}

TEST(GradientNorm, EmptyMaskIsZero) {
  const TorusGrid g(1, 8);
  const TorusField u = sample(instances::axis_wave(1, 0, 1.0), g);
  EXPECT_EQ(gradient_l2_norm_squared(u, RegionMask::empty(g)), 0.0);
}

TEST(RegionMask, SubsetAndCount) {
  const TorusGrid g(1, 8);
  const auto half = RegionMask::from_predicate(g, Domain::periodic, [](std::span<const double> x) { return x[0] < 0.5; });
  const auto quarter =
      RegionMask::from_predicate(g, Domain::periodic, [](std::span<const double> x) { return x[0] < 0.25; });
  EXPECT_EQ(half.count(), g.size() / 2);
  EXPECT_TRUE(quarter.subset_of(half));
  EXPECT_FALSE(half.subset_of(quarter));
  EXPECT_FALSE(half.subset_of(RegionMask::full(TorusGrid(1, 10))));
}

TEST(FieldIo, RoundTripBitExact) {
  const TorusGrid g(2, 8);
  const TorusField u = sample(instances::coupled_trig(2), g);
  const fs::path p = temp_path("roundtrip.mhsf");
  write_field(p, u, "coupled trig");
  const TorusField back = read_field(p);
  EXPECT_EQ(back.grid(), g);
  EXPECT_EQ(back.domain(), Domain::periodic);
  ASSERT_EQ(back.values().size(), u.values().size());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(back[i], u[i]);
  EXPECT_TRUE(fs::exists(sidecar_path(p)));
}

TEST(FieldIo, HeaderLayout) {
  const TorusGrid g(1, 8);
  const TorusField u = sample(instances::trig_product(), g);
  const fs::path p = temp_path("header.mhsf");
  write_field(p, u);
  std::ifstream in(p, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "MHSF");
  std::uint32_t words[5];
  in.read(reinterpret_cast<char*>(words), sizeof words);
  EXPECT_EQ(words[0], kFieldFormatVersion);
  EXPECT_EQ(words[1], 1u);
  EXPECT_EQ(words[2], 8u);
  EXPECT_EQ(words[3], 0u);
  EXPECT_EQ(words[4], 0u);
  std::uint64_t count = 0;
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  EXPECT_EQ(count, 64u);
  EXPECT_EQ(fs::file_size(p), 32u + 8u * 64u);
}

TEST(FieldIo, TruncatedFileRejected) {
  const TorusGrid g(1, 8);
  const fs::path p = temp_path("truncated.mhsf");
  write_field(p, sample(instances::trig_product(), g));
  fs::resize_file(p, 100);
  EXPECT_THROW(read_field(p), std::runtime_error);
}

TEST(FieldIo, BadMagicRejected) {
  const fs::path p = temp_path("garbage.mhsf");
  std::ofstream(p, std::ios::binary) << "not a field file at all, just text padding....";
  EXPECT_THROW(read_field_file(p), std::runtime_error);
}

TEST(Parallel, PairwiseSumExactOnIntegers) {
  std::vector<double> xs(10001);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(xs), 10000.0 * 10001.0 / 2.0);
}

TEST(Parallel, ThreadCountDoesNotChangeResults) {
  const TorusGrid g(2, 16);
  const TorusField u = sample(instances::coupled_trig(2), g);
  setenv("MHESS_THREADS", "1", 1);
  const double one = integrate_hessian_measure(u, 2, RegionMask::full(g));
  setenv("MHESS_THREADS", "3", 1);
  const double three = integrate_hessian_measure(u, 2, RegionMask::full(g));
  unsetenv("MHESS_THREADS");
  EXPECT_EQ(one, three);
}

TEST(Parallel, ExceptionPropagates) {
  EXPECT_THROW(parallel_blocks(100, 10,
                               [](std::size_t b, std::size_t, std::size_t) {
                                 if (b == 50) throw std::runtime_error("boom");
                               }),
               std::runtime_error);
}
