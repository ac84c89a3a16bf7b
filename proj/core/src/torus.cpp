#include "mhess/torus.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mhess/errors.hpp"
#include "mhess/parallel.hpp"

namespace mhess {

namespace {

constexpr int kMaxAxes = 2 * kMaxDim;

// Neighbor offsets (with periodic wrap) of one grid point along every axis.
struct Neighborhood {
  std::array<std::ptrdiff_t, kMaxAxes> plus{};
  std::array<std::ptrdiff_t, kMaxAxes> minus{};
};

Neighborhood neighborhood(const TorusGrid& grid, std::size_t linear) {
  Neighborhood nb;
  const int N = grid.points_per_axis();
  std::size_t rest = linear;
  for (int a = 0; a < grid.axes(); ++a) {
    const int i = static_cast<int>(rest % static_cast<std::size_t>(N));
    rest /= static_cast<std::size_t>(N);
    const auto s = static_cast<std::ptrdiff_t>(grid.stride(a));
    nb.plus[static_cast<std::size_t>(a)] = (i == N - 1) ? -(N - 1) * s : s;
    nb.minus[static_cast<std::size_t>(a)] = (i == 0) ? (N - 1) * s : -s;
  }
  return nb;
}

}  // namespace

TorusGrid::TorusGrid(int n, int points_per_axis, std::uint64_t point_budget)
    : n_(n), N_(points_per_axis), size_(1) {
  if (n < 1 || n > kMaxDim) {
    throw std::invalid_argument("TorusGrid: n must be in 1.." + std::to_string(kMaxDim));
  }
  if (points_per_axis < 8 || points_per_axis % 2 != 0) {
    throw std::invalid_argument("TorusGrid: points per axis must be even and >= 8, got " +
                                std::to_string(points_per_axis));
  }
  std::uint64_t total = 1;
  for (int a = 0; a < 2 * n; ++a) {
    strides_.push_back(static_cast<std::size_t>(total));
    total *= static_cast<std::uint64_t>(points_per_axis);
    if (total > point_budget) {
      throw std::invalid_argument("TorusGrid: " + std::to_string(points_per_axis) + "^" +
                                  std::to_string(2 * n) + " points exceed the budget of " +
                                  std::to_string(point_budget));
    }
  }
  size_ = static_cast<std::size_t>(total);
}

double TorusGrid::cell_volume() const noexcept { return std::pow(spacing(), axes()); }

std::vector<int> TorusGrid::multi_index(std::size_t linear) const {
  std::vector<int> idx(static_cast<std::size_t>(axes()));
  for (int a = 0; a < axes(); ++a) {
    idx[static_cast<std::size_t>(a)] = static_cast<int>(linear % static_cast<std::size_t>(N_));
    linear /= static_cast<std::size_t>(N_);
  }
  return idx;
}

std::size_t TorusGrid::linear_index(std::span<const int> multi) const {
  if (static_cast<int>(multi.size()) != axes()) {
    throw std::invalid_argument("linear_index: wrong number of axes");
  }
  std::size_t linear = 0;
  for (int a = axes() - 1; a >= 0; --a) {
    const int i = multi[static_cast<std::size_t>(a)];
    if (i < 0 || i >= N_) throw std::out_of_range("linear_index: index outside grid");
    linear = linear * static_cast<std::size_t>(N_) + static_cast<std::size_t>(i);
  }
  return linear;
}

double TorusGrid::coordinate(int i, Domain domain) const noexcept {
  return domain == Domain::periodic ? i * spacing() : -0.5 + i * spacing();
}

void TorusGrid::coordinates(std::size_t linear, Domain domain, std::span<double> out) const {
  for (int a = 0; a < axes(); ++a) {
    out[static_cast<std::size_t>(a)] =
        coordinate(static_cast<int>(linear % static_cast<std::size_t>(N_)), domain);
    linear /= static_cast<std::size_t>(N_);
  }
}

bool TorusGrid::is_valid(std::size_t linear, Domain domain) const {
  if (domain == Domain::periodic) return true;
  for (int a = 0; a < axes(); ++a) {
    const int i = static_cast<int>(linear % static_cast<std::size_t>(N_));
    linear /= static_cast<std::size_t>(N_);
    if (i < kChartMargin || i > N_ - 1 - kChartMargin) return false;
  }
  return true;
}

TorusField::TorusField(TorusGrid grid, Domain domain, std::vector<double> values)
    : grid_(std::move(grid)), domain_(domain), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("TorusField: value count does not match the grid");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("TorusField: non-finite value at linear index " +
                                  std::to_string(i));
    }
  }
}

HermitianMatrix HessianField::at(std::size_t linear) const {
  const int n = grid.n();
  SmallMatrix a(n, n);
  const std::size_t base = linear * static_cast<std::size_t>(n * n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) a(p, q) = entries[base + static_cast<std::size_t>(p * n + q)];
  }
  return HermitianMatrix(a);
}

RegionMask::RegionMask(TorusGrid grid, std::uint8_t fill)
    : grid_(std::move(grid)), bits_(grid_.size(), fill) {}

RegionMask RegionMask::full(const TorusGrid& grid) { return RegionMask(grid, 1); }
RegionMask RegionMask::empty(const TorusGrid& grid) { return RegionMask(grid, 0); }

RegionMask RegionMask::from_predicate(const TorusGrid& grid, Domain domain,
                                      const std::function<bool(std::span<const double>)>& pred) {
  RegionMask mask = empty(grid);
  std::vector<double> x(static_cast<std::size_t>(grid.axes()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.coordinates(i, domain, x);
    mask.set(i, pred(x));
  }
  return mask;
}

std::size_t RegionMask::count() const {
  std::size_t c = 0;
  for (auto b : bits_) c += b;
  return c;
}

bool RegionMask::subset_of(const RegionMask& other) const {
  if (!(grid_ == other.grid_)) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

TorusField sample(const ClosedFormPotential& potential, const TorusGrid& grid, Domain domain) {
  if (domain == Domain::periodic && !potential.periodic()) {
    throw Refusal("sample: potential '" + potential.describe() +
                  "' is not periodic; sample it on the chart domain instead");
  }
  if (potential.min_dim() > grid.n()) {
    throw std::invalid_argument("sample: potential needs n >= " +
                                std::to_string(potential.min_dim()));
  }
  std::vector<double> values(grid.size());
  parallel_blocks(grid.size(), 1 << 16, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<double> x(static_cast<std::size_t>(grid.axes()));
    for (std::size_t i = begin; i < end; ++i) {
      grid.coordinates(i, domain, x);
      values[i] = potential(x);
    }
  });
  return TorusField(grid, domain, std::move(values));
}

HermitianMatrix hessian_at(const TorusField& u, std::size_t linear) {
  const TorusGrid& grid = u.grid();
  const int n = grid.n();
  const int axes = grid.axes();
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  const auto v = u.values();
  const Neighborhood nb = neighborhood(grid, linear);
  const auto at = [&](std::ptrdiff_t offset) {
    return v[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(linear) + offset)];
  };

  std::array<double, kMaxAxes * kMaxAxes> d2{};
  const double center = v[linear];
  for (int a = 0; a < axes; ++a) {
    const auto pa = nb.plus[static_cast<std::size_t>(a)];
    const auto ma = nb.minus[static_cast<std::size_t>(a)];
    d2[static_cast<std::size_t>(a * axes + a)] = (at(pa) - 2.0 * center + at(ma)) * inv_h2;
    for (int b = a + 1; b < axes; ++b) {
      const auto pb = nb.plus[static_cast<std::size_t>(b)];
      const auto mb = nb.minus[static_cast<std::size_t>(b)];
      const double val = (at(pa + pb) - at(pa + mb) - at(ma + pb) + at(ma + mb)) * 0.25 * inv_h2;
      d2[static_cast<std::size_t>(a * axes + b)] = val;
      d2[static_cast<std::size_t>(b * axes + a)] = val;
    }
  }
  const auto D = [&](int a, int b) { return d2[static_cast<std::size_t>(a * axes + b)]; };

  SmallMatrix h(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
      h(j, k) = Complex(0.25 * (D(xj, xk) + D(yj, yk)), 0.25 * (D(xj, yk) - D(yj, xk)));
    }
  }
  return HermitianMatrix(h);
}

HessianField complex_hessian(const TorusField& u) {
  const TorusGrid& grid = u.grid();
  const int n = grid.n();
  HessianField out{grid, u.domain(), std::vector<Complex>(grid.size() * static_cast<std::size_t>(n * n))};
  parallel_blocks(grid.size(), 1 << 14, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      const HermitianMatrix h = hessian_at(u, i);
      const std::size_t base = i * static_cast<std::size_t>(n * n);
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) out.entries[base + static_cast<std::size_t>(p * n + q)] = h(p, q);
      }
    }
  });
  return out;
}

double gradient_l2_norm_squared(const TorusField& u, const RegionMask& mask) {
  const TorusGrid& grid = u.grid();
  if (!(mask.grid() == grid)) throw std::invalid_argument("gradient_l2_norm_squared: grid mismatch");
  const double inv_2h = 0.5 / grid.spacing();
  const auto v = u.values();
  constexpr std::size_t kBlock = 1 << 14;
  std::vector<double> partial(block_count(grid.size(), kBlock), 0.0);
  parallel_blocks(grid.size(), kBlock, [&](std::size_t begin, std::size_t end, std::size_t b) {
    std::vector<double> terms;
    terms.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      if (!mask[i] || !grid.is_valid(i, u.domain())) continue;
      const Neighborhood nb = neighborhood(grid, i);
      double g2 = 0.0;
      for (int a = 0; a < grid.axes(); ++a) {
        const auto ip = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + nb.plus[static_cast<std::size_t>(a)]);
        const auto im = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + nb.minus[static_cast<std::size_t>(a)]);
        const double d = (v[ip] - v[im]) * inv_2h;
        g2 += d * d;
      }
      terms.push_back(g2);
    }
    partial[b] = pairwise_sum(terms);
  });
  return pairwise_sum(partial) * grid.cell_volume();
}

}  // namespace mhess
