#include <gtest/gtest.h>

#include <cmath>

#include "mhess/errors.hpp"
#include "mhess/instances.hpp"
#include "mhess/inequalities.hpp"

using namespace mhess;

namespace {

struct Pair {
  TorusGrid grid{2, 16};
  TorusField u = sample(instances::trig_pair_first(2), grid);
  TorusField v = sample(instances::trig_pair_second(2), grid);
};

TorusField shifted(const ClosedFormPotential& p, double c, const TorusGrid& g) {
  return sample(p + ClosedFormPotential::constant(c), g);
}

}  // namespace

TEST(MixedInequality, PassesWithExactDensities) {
  const Pair p;
  const std::vector<TorusField> us{p.u, p.v};
  const std::vector<DensityField> fs{hessian_measure(p.u, 2), hessian_measure(p.v, 2)};
  const CheckReport r = check_mixed_inequality(us, constant_density(p.grid, Domain::periodic, 1.0), fs);
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.worst_margin, 0.0);
  EXPECT_NO_THROW(validate(r));
}

TEST(MixedInequality, EqualFieldsGiveEquality) {
  const Pair p;
  const std::vector<TorusField> us{p.u, p.u};
  const std::vector<DensityField> fs{hessian_measure(p.u, 2), hessian_measure(p.u, 2)};
  const CheckReport r = check_mixed_inequality(us, constant_density(p.grid, Domain::periodic, 1.0), fs);
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.worst_margin, 0.0, 1e-12);
}

TEST(MixedInequality, OverstatedDensityRefused) {
  const Pair p;
  const std::vector<TorusField> us{p.u, p.v};
  const std::vector<DensityField> fs{hessian_measure(p.u, 2), constant_density(p.grid, Domain::periodic, 2.0)};
  try {
    check_mixed_inequality(us, constant_density(p.grid, Domain::periodic, 1.0), fs);
    FAIL() << "expected a refusal";
  } catch (const Refusal& e) {
    EXPECT_EQ(e.location().at("field").get<int>(), 1);
    EXPECT_TRUE(e.location().contains("grid_index"));
  }
}

TEST(MixedInequality, NonMShRefused) {
  const TorusGrid g(2, 16);
  const std::vector<TorusField> us{sample(instances::trig_product(1.0), g), sample(instances::trig_product(0.02), g)};
  const std::vector<DensityField> fs{constant_density(g, Domain::periodic, 0.0),
                                     constant_density(g, Domain::periodic, 0.0)};
  try {
    check_mixed_inequality(us, constant_density(g, Domain::periodic, 1.0), fs);
    FAIL() << "expected a refusal";
  } catch (const Refusal& e) {
    EXPECT_EQ(e.location().at("field").get<int>(), 0);
  }
}

TEST(Comparison, TrigPairPasses) {
  const Pair p;
  const TorusField v = shifted(instances::trig_pair_second(2), -0.01, p.grid);
  for (int m = 1; m <= 2; ++m) {
    const CheckReport r = check_comparison(p.u, v, m);
    EXPECT_TRUE(r.passed()) << r.worst_margin;
    EXPECT_GT(r.details.at("set_points").get<std::size_t>(), 0u);
  }
}

TEST(Comparison, EmptySetHasZeroMargin) {
  const Pair p;
  const CheckReport r = check_comparison(p.u, p.u, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.worst_margin, 0.0);
}

TEST(Comparison, RefusesChart) {
  const TorusGrid g(1, 8);
  const TorusField q = sample(ClosedFormPotential::quadratic(1.0), g, Domain::chart);
  EXPECT_THROW(check_comparison(q, q, 1), Refusal);
}

TEST(Comparison, RefusesNonMSh) {
  const TorusGrid g(1, 16);
  const TorusField bad = sample(instances::trig_product(1.0), g);
  const TorusField good = sample(instances::trig_product(0.02), g);
  try {
    check_comparison(good, bad, 1);
    FAIL() << "expected a refusal";
  } catch (const Refusal& e) {
    EXPECT_EQ(e.location().at("field").get<std::string>(), "v");
  }
}

TEST(Domination, BelowVariantPasses) {
  const Pair p;
  const TorusField v = shifted(instances::trig_pair_first(2), -0.01, p.grid);
  const CheckReport r = check_domination(p.u, v, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.details.at("hypothesis_mass").get<double>(), 0.0);
  EXPECT_NEAR(r.details.at("min_u_minus_v").get<double>(), 0.01, 1e-15);
}

TEST(Domination, ChargedSetIsNoClaim) {
  const Pair p;
  const TorusField v = shifted(instances::trig_pair_first(2), 0.01, p.grid);
  const CheckReport r = check_domination(p.u, v, 2);
  EXPECT_EQ(r.outcome, Outcome::no_claim);
  EXPECT_NEAR(r.details.at("hypothesis_mass").get<double>(), 1.0, 1e-3);
}

TEST(Domination, FailureCarriesLocation) {
  // Loosen tol_mass so the hypothesis is accepted; the conclusion then fails.
  const Pair p;
  const TorusField v = shifted(instances::trig_pair_first(2), 1.0, p.grid);
  const CheckReport r = check_domination(p.u, v, 2, 2.0);
  EXPECT_EQ(r.outcome, Outcome::fail);
  EXPECT_TRUE(r.location.contains("grid_index"));
  EXPECT_NO_THROW(validate(r));
}

TEST(Domination, DefaultToleranceIsTenCells) {
  EXPECT_DOUBLE_EQ(default_tol_dom(TorusGrid(2, 64)), 10.0 / 64);
}

TEST(ConstantDifference, ShiftPasses) {
  const Pair p;
  const TorusField v = shifted(instances::trig_pair_first(2), 0.3, p.grid);
  const CheckReport r = check_constant_difference(p.u, v, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.details.at("mean_difference").get<double>(), -0.3, 1e-14);
  EXPECT_LT(r.details.at("max_deviation").get<double>(), 1e-14);
}

TEST(ConstantDifference, DifferentDensitiesNoClaim) {
  const Pair p;
  EXPECT_EQ(check_constant_difference(p.u, p.v, 2).outcome, Outcome::no_claim);
}

TEST(ExponentialComparison, SubAndSuperSolution) {
  const Pair p;
  const int m = 2;
  // mu chosen so that u solves H_m(u) = e^u mu exactly.
  DensityField mu = hessian_measure(p.u, m);
  for (std::size_t i = 0; i < mu.values.size(); ++i) mu.values[i] *= std::exp(-p.u[i]);
  const TorusField lower = shifted(instances::trig_pair_first(2), -0.1, p.grid);
  const CheckReport r = check_exponential_comparison(p.u, lower, m, mu);
  EXPECT_TRUE(r.passed());
  const TorusField higher = shifted(instances::trig_pair_first(2), 0.1, p.grid);
  EXPECT_EQ(check_exponential_comparison(p.u, higher, m, mu).outcome, Outcome::no_claim);
}
