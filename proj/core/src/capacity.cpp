#include "mhess/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mhess/errors.hpp"

namespace mhess {

namespace {

struct Evaluation {
  bool admissible = false;
  double value = 0.0;
  std::string reason;
};

Evaluation evaluate(const RegionMask& E, const AdmissibleFamily& family, int m,
                    const std::vector<double>& theta) {
  if (!family.in_box(theta)) return {false, 0.0, "outside the parameter box"};
  const TorusField u = sample(family.member(theta), E.grid(), Domain::periodic);
  const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
  if (*lo < -1.0 || *hi > 0.0) return {false, 0.0, "leaves [-1, 0] on the grid"};
  const CheckReport sh = verify_m_sh(u, m);
  if (!sh.passed()) return {false, 0.0, "not omega-m-sh: " + sh.location.dump()};
  return {true, integrate_hessian_measure(u, m, E), {}};
}

}  // namespace

AdmissibleFamily::AdmissibleFamily(int n, std::vector<Mode> modes) : n_(n), modes_(std::move(modes)) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("AdmissibleFamily: bad n");
  double total = 0.0;
  for (const auto& mode : modes_) {
    if (mode.wave.size() != static_cast<std::size_t>(2 * n)) {
      throw std::invalid_argument("AdmissibleFamily: wave vectors need 2n entries");
    }
    if (!(mode.bound >= 0.0)) throw std::invalid_argument("AdmissibleFamily: negative bound");
    total += mode.bound;
  }
  if (total > 0.5) {
    throw std::invalid_argument("AdmissibleFamily: bounds sum to more than 1/2; -1 <= u <= 0 not guaranteed");
  }
}

AdmissibleFamily AdmissibleFamily::trig_default(int n, double amplitude) {
  std::vector<Mode> modes;
  for (int a = 0; a < 2 * n; ++a) {
    std::vector<int> wave(static_cast<std::size_t>(2 * n), 0);
    wave[static_cast<std::size_t>(a)] = 1;
    modes.push_back({wave, 0.0, amplitude});
    modes.push_back({wave, -0.5 * std::numbers::pi, amplitude});
  }
  return AdmissibleFamily(n, std::move(modes));
}

ClosedFormPotential AdmissibleFamily::member(const std::vector<double>& theta) const {
  if (theta.size() != modes_.size()) throw std::invalid_argument("AdmissibleFamily: theta size");
  ClosedFormPotential u = ClosedFormPotential::constant(-0.5);
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (theta[i] != 0.0) u += ClosedFormPotential::trig_wave(theta[i], modes_[i].wave, modes_[i].phase);
  }
  return u;
}

bool AdmissibleFamily::in_box(const std::vector<double>& theta) const {
  if (theta.size() != modes_.size()) return false;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(std::abs(theta[i]) <= modes_[i].bound)) return false;
  }
  return true;
}

CapacityEstimate capacity_lower_bound(const RegionMask& E, const AdmissibleFamily& family, int m,
                                      std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("capacity_lower_bound: budget must be >= 1");
  if (family.n() != E.grid().n()) throw std::invalid_argument("capacity_lower_bound: dimension mismatch");
  if (m < 1 || m > family.n()) throw std::invalid_argument("capacity_lower_bound: m outside 1..n");

  CapacityEstimate est;
  est.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t d = family.dim();
  bool have_best = false;

  const auto consider = [&](std::vector<double> theta) {
    const std::size_t index = est.evaluations++;
    const Evaluation e = evaluate(E, family, m, theta);
    if (!e.admissible) {
      est.skipped.push_back({index, e.reason});
      return;
    }
    if (!have_best || e.value > est.lower_bound) {
      have_best = true;
      est.lower_bound = e.value;
      est.certificate = {std::move(theta), e.value, index};
    }
  };

  consider(std::vector<double>(d, 0.0));
  const std::size_t uniform = (budget - 1) / 2;
  for (std::size_t s = 0; s < uniform; ++s) {
    std::vector<double> theta(d);
    for (std::size_t i = 0; i < d; ++i) theta[i] = unit(rng) * family.modes()[i].bound;
    consider(std::move(theta));
  }
  double step = 0.25;
  while (est.evaluations < budget) {
    std::vector<double> theta = have_best ? est.certificate.theta : std::vector<double>(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      const double b = family.modes()[i].bound;
      theta[i] = std::clamp(theta[i] + step * b * gauss(rng), -b, b);
    }
    consider(std::move(theta));
    step *= 0.85;
  }
  return est;
}

double evaluate_certificate(const RegionMask& E, const AdmissibleFamily& family, int m,
                            const std::vector<double>& theta) {
  const Evaluation e = evaluate(E, family, m, theta);
  if (!e.admissible) throw Refusal("evaluate_certificate: " + e.reason);
  return e.value;
}

CheckReport capacity_report(const CapacityEstimate& estimate, const RegionMask& E, int m,
                            std::optional<double> tol_mass) {
  const double tol = tol_mass.value_or(default_tol_mass(E.grid()));
  CheckReport r;
  r.suite = "capacity";
  r.tolerance = tol;
  r.worst_margin = 1.0 + tol - estimate.lower_bound;
  r.outcome = r.worst_margin >= 0.0 ? Outcome::pass : Outcome::fail;
  if (!r.passed()) r.location = nlohmann::json{{"theta", estimate.certificate.theta}};
  r.provenance.n = E.grid().n();
  r.provenance.grid = E.grid().points_per_axis();
  r.provenance.seed = estimate.seed;
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : estimate.skipped) skipped.push_back({{"evaluation", s.evaluation}, {"reason", s.reason}});
  r.details = {{"m", m},
               {"lower_bound", estimate.lower_bound},
               {"region_points", E.count()},
               {"evaluations", estimate.evaluations},
               {"certificate", {{"theta", estimate.certificate.theta},
                                {"value", estimate.certificate.value},
                                {"evaluation", estimate.certificate.evaluation}}},
               {"skipped", skipped}};
  return r;
}

}  // namespace mhess
