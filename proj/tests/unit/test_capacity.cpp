#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "mhess/capacity.hpp"
#include "mhess/errors.hpp"

using namespace mhess;

namespace {

RegionMask slab(const TorusGrid& g, double width) {
  return RegionMask::from_predicate(g, Domain::periodic, [width](std::span<const double> x) { return x[0] < width; });
}

}  // namespace

TEST(AdmissibleFamily, DefaultShape) {
  const auto f = AdmissibleFamily::trig_default(2);
  EXPECT_EQ(f.dim(), 8u);
  for (const auto& mode : f.modes()) EXPECT_DOUBLE_EQ(mode.bound, 0.05);
}

TEST(AdmissibleFamily, RejectsOversizedBounds) {
  EXPECT_THROW(AdmissibleFamily::trig_default(2, 0.07), std::invalid_argument);
  EXPECT_THROW(AdmissibleFamily(1, {{{1, 0, 0}, 0.0, 0.1}}), std::invalid_argument);
}

TEST(AdmissibleFamily, MembersStayInUnitBand) {
  gen::Gen g(103);
  const auto f = AdmissibleFamily::trig_default(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> theta(f.dim());
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = g.uniform(-1, 1) * f.modes()[i].bound;
    ASSERT_TRUE(f.in_box(theta));
    const ClosedFormPotential u = f.member(theta);
    for (int s = 0; s < 20; ++s) {
      const auto x = g.vector(4, 0.0, 1.0);
      const double v = u(x);
      EXPECT_GE(v, -1.0);
      EXPECT_LE(v, 0.0);
    }
  }
}

TEST(AdmissibleFamily, BoxMembership) {
  const auto f = AdmissibleFamily::trig_default(1);
  std::vector<double> theta(f.dim(), 0.0);
  EXPECT_TRUE(f.in_box(theta));
  theta[0] = 0.051;
  EXPECT_FALSE(f.in_box(theta));
  EXPECT_FALSE(f.in_box(std::vector<double>(3, 0.0)));
}

TEST(Capacity, FullTorusIsOne) {
  const TorusGrid g(2, 16);
  const auto est = capacity_lower_bound(RegionMask::full(g), AdmissibleFamily::trig_default(2), 2, 6, 1);
  EXPECT_NEAR(est.lower_bound, 1.0, 1e-12);
  EXPECT_TRUE(capacity_report(est, RegionMask::full(g), 2).passed());
}

TEST(Capacity, EmptyRegionIsZero) {
  const TorusGrid g(1, 16);
  const auto est = capacity_lower_bound(RegionMask::empty(g), AdmissibleFamily::trig_default(1), 1, 4, 1);
  EXPECT_EQ(est.lower_bound, 0.0);
}

TEST(Capacity, ConstantMemberIsFirstEvaluation) {
  const TorusGrid g(1, 16);
  const RegionMask e = slab(g, 0.25);
  const auto est = capacity_lower_bound(e, AdmissibleFamily::trig_default(1), 1, 1, 7);
  EXPECT_EQ(est.evaluations, 1u);
  EXPECT_EQ(est.certificate.evaluation, 0u);
  EXPECT_NEAR(est.lower_bound, 0.25, 1e-14);
}

TEST(Capacity, DeterministicForSeed) {
  const TorusGrid g(1, 16);
  const RegionMask e = slab(g, 0.25);
  const auto f = AdmissibleFamily::trig_default(1);
  const auto a = capacity_lower_bound(e, f, 1, 12, 42);
  const auto b = capacity_lower_bound(e, f, 1, 12, 42);
  EXPECT_EQ(a.lower_bound, b.lower_bound);
  EXPECT_EQ(a.certificate.theta, b.certificate.theta);
}

TEST(Capacity, SearchImprovesOnConstant) {
  const TorusGrid g(1, 16);
  const RegionMask e = slab(g, 0.25);
  const auto est = capacity_lower_bound(e, AdmissibleFamily::trig_default(1), 1, 24, 3);
  EXPECT_GT(est.lower_bound, 0.25);
  EXPECT_LE(est.lower_bound, 1.0);
}

TEST(Capacity, CertificateRechecks) {
  const TorusGrid g(1, 16);
  const RegionMask e = slab(g, 0.5);
  const auto f = AdmissibleFamily::trig_default(1);
  const auto est = capacity_lower_bound(e, f, 1, 12, 5);
  EXPECT_EQ(evaluate_certificate(e, f, 1, est.certificate.theta), est.lower_bound);
}

TEST(Capacity, CertificateTransfersToSupersets) {
  // H_m of an admissible member is non-negative, so a certificate for E is a
  // lower bound on any F containing E.
  const TorusGrid g(1, 16);
  const auto f = AdmissibleFamily::trig_default(1);
  const RegionMask small = slab(g, 0.25);
  const RegionMask large = slab(g, 0.5);
  ASSERT_TRUE(small.subset_of(large));
  const auto est = capacity_lower_bound(small, f, 1, 12, 9);
  EXPECT_GE(evaluate_certificate(large, f, 1, est.certificate.theta), est.lower_bound);
}

TEST(Capacity, InadmissibleCertificateRefused) {
  const TorusGrid g(1, 16);
  const auto f = AdmissibleFamily::trig_default(1);
  std::vector<double> theta(f.dim(), 0.0);
  theta[0] = 0.2;
  EXPECT_THROW(evaluate_certificate(RegionMask::full(g), f, 1, theta), Refusal);
}

TEST(Capacity, ConeExitsAreSkipped) {
  // Bounds sum to 1/2 but a single high-frequency mode is not 1-sh.
  const TorusGrid g(1, 16);
  const AdmissibleFamily f(1, {{{4, 0}, 0.0, 0.5}});
  const auto est = capacity_lower_bound(RegionMask::full(g), f, 1, 10, 2);
  EXPECT_FALSE(est.skipped.empty());
  for (const auto& s : est.skipped) EXPECT_FALSE(s.reason.empty());
  const CheckReport r = capacity_report(est, RegionMask::full(g), 1);
  EXPECT_EQ(r.details.at("skipped").size(), est.skipped.size());
  EXPECT_EQ(r.provenance.seed, std::optional<std::uint64_t>(2));
}
