#pragma once

// Sampled functions on the flat torus (R/Z)^{2n} with finite-difference
// complex Hessians. Real axis 2j is x_j, axis 2j+1 is y_j.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mhess/hermitian.hpp"
#include "mhess/potential.hpp"

namespace mhess {

/// Periodic fields live on [0,1)^{2n} with wraparound. Chart fields live on
/// [-1/2, 1/2)^{2n}, are not periodic, and their stencil output within
/// kChartMargin cells of the boundary is excluded from every report.
enum class Domain { periodic, chart };

inline constexpr int kChartMargin = 2;

class TorusGrid {
 public:
  /// 2^28 points: n = 2 at N = 128.
  static constexpr std::uint64_t kDefaultPointBudget = std::uint64_t{1} << 28;

  TorusGrid(int n, int points_per_axis, std::uint64_t point_budget = kDefaultPointBudget);

  int n() const noexcept { return n_; }
  int axes() const noexcept { return 2 * n_; }
  int points_per_axis() const noexcept { return N_; }
  double spacing() const noexcept { return 1.0 / N_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t stride(int axis) const noexcept { return strides_[static_cast<std::size_t>(axis)]; }
  /// h^{2n}: the volume of one cell; the torus has volume 1.
  double cell_volume() const noexcept;

  std::vector<int> multi_index(std::size_t linear) const;
  std::size_t linear_index(std::span<const int> multi) const;
  double coordinate(int i, Domain domain) const noexcept;
  void coordinates(std::size_t linear, Domain domain, std::span<double> out) const;
  bool is_valid(std::size_t linear, Domain domain) const;

  friend bool operator==(const TorusGrid& a, const TorusGrid& b) {
    return a.n_ == b.n_ && a.N_ == b.N_;
  }

 private:
  int n_;
  int N_;
  std::size_t size_;
  std::vector<std::size_t> strides_;
};

class TorusField {
 public:
  TorusField(TorusGrid grid, Domain domain, std::vector<double> values);

  const TorusGrid& grid() const noexcept { return grid_; }
  Domain domain() const noexcept { return domain_; }
  bool periodic() const noexcept { return domain_ == Domain::periodic; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  TorusGrid grid_;
  Domain domain_;
  std::vector<double> values_;
};

/// Per-point complex Hessian, n x n complex entries stored row-major.
struct HessianField {
  TorusGrid grid;
  Domain domain;
  std::vector<Complex> entries;

  HermitianMatrix at(std::size_t linear) const;
  bool valid(std::size_t linear) const { return grid.is_valid(linear, domain); }
};

/// Boolean array over a grid. Realizes Borel-like sets such as {u < v}.
class RegionMask {
 public:
  static RegionMask full(const TorusGrid& grid);
  static RegionMask empty(const TorusGrid& grid);
  static RegionMask from_predicate(const TorusGrid& grid, Domain domain,
                                   const std::function<bool(std::span<const double>)>& pred);

  const TorusGrid& grid() const noexcept { return grid_; }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  std::size_t count() const;
  bool subset_of(const RegionMask& other) const;

 private:
  RegionMask(TorusGrid grid, std::uint8_t fill);

  TorusGrid grid_;
  std::vector<std::uint8_t> bits_;
};

/// Pointwise evaluation. Refuses a non-periodic potential on a periodic
/// domain (wraparound would be wrong).
TorusField sample(const ClosedFormPotential& potential, const TorusGrid& grid,
                  Domain domain = Domain::periodic);

/// d^2 u / dz_j dz-bar_k = [(u_{x_j x_k} + u_{y_j y_k}) + i (u_{x_j y_k} - u_{y_j x_k})] / 4
/// with second-order central differences and periodic wrap. dd^c |z|^2 is
/// the identity under this convention.
HermitianMatrix hessian_at(const TorusField& u, std::size_t linear);

HessianField complex_hessian(const TorusField& u);

/// h^{2n} sum over masked valid points of |grad u|^2 (central differences).
double gradient_l2_norm_squared(const TorusField& u, const RegionMask& mask);

}  // namespace mhess
