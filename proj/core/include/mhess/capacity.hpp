#pragma once

// Certified lower bounds for the m-capacity of a grid region: the largest
// H_m mass on E found among admissible members of a parametrized family.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mhess/measures.hpp"
#include "mhess/potential.hpp"

namespace mhess {

/// u_theta = -1/2 + sum_i theta_i * cos(2 pi <wave_i, x> + phase_i), with
/// |theta_i| <= bound_i and sum bound_i <= 1/2, so -1 <= u_theta <= 0 holds
/// without clamping. Members that leave the cone are skipped.
class AdmissibleFamily {
 public:
  struct Mode {
    std::vector<int> wave;
    double phase = 0.0;
    double bound = 0.0;
  };

  AdmissibleFamily(int n, std::vector<Mode> modes);

  /// cos and sin of 2 pi x_a for every real axis a, each bounded by
  /// amplitude (default 0.05).
  static AdmissibleFamily trig_default(int n, double amplitude = 0.05);

  int n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return modes_.size(); }
  const std::vector<Mode>& modes() const noexcept { return modes_; }

  ClosedFormPotential member(const std::vector<double>& theta) const;
  bool in_box(const std::vector<double>& theta) const;

 private:
  int n_;
  std::vector<Mode> modes_;
};

struct Certificate {
  std::vector<double> theta;
  double value = 0.0;
  std::size_t evaluation = 0;
};

struct SkippedMember {
  std::size_t evaluation = 0;
  std::string reason;
};

struct CapacityEstimate {
  double lower_bound = 0.0;
  Certificate certificate;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
  std::vector<SkippedMember> skipped;
};

/// Evaluation 0 is theta = 0 (the constant -1/2). Then about half of the
/// budget samples the box uniformly and the rest refines around the best
/// point with a shrinking step. Seeded mt19937_64.
CapacityEstimate capacity_lower_bound(const RegionMask& E, const AdmissibleFamily& family, int m,
                                      std::size_t budget, std::uint64_t seed);

/// Recomputes int_E H_m(u_theta); throws Refusal if theta is not admissible.
double evaluate_certificate(const RegionMask& E, const AdmissibleFamily& family, int m,
                            const std::vector<double>& theta);

CheckReport capacity_report(const CapacityEstimate& estimate, const RegionMask& E, int m,
                            std::optional<double> tol_mass = {});

}  // namespace mhess
