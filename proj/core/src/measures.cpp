#include "mhess/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mhess/errors.hpp"
#include "mhess/field_io.hpp"
#include "mhess/parallel.hpp"

namespace mhess {

namespace {

constexpr std::size_t kBlock = 1 << 14;

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* where) {
  if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

HermitianMatrix shifted_hessian(const TorusField& u, std::size_t i, const Metric& g) {
  return g.matrix() + hessian_at(u, i);
}

struct SweepResult {
  double mass = 0.0;
  bool inside = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::size_t worst_index = 0;
  int worst_k = 0;
  std::size_t first_outside = 0;
  int first_outside_k = 0;
};

// One pass over the grid computing sigma_1..sigma_n of g + Hess u at every
// valid point: cone status everywhere, H_m density integrated over `mask`.
SweepResult sweep(const TorusField& u, int m, const Metric& g, const RegionMask* mask,
                  ConeTolerance tol) {
  const TorusGrid& grid = u.grid();
  const double norm = binomial(grid.n(), m);
  const std::size_t blocks = block_count(grid.size(), kBlock);
  std::vector<double> partial(blocks, 0.0);
  std::vector<SweepResult> local(blocks);

  parallel_blocks(grid.size(), kBlock, [&](std::size_t begin, std::size_t end, std::size_t b) {
    SweepResult& r = local[b];
    std::vector<double> terms;
    terms.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      if (!grid.is_valid(i, u.domain())) continue;
      const PointSigmas s = point_sigmas(shifted_hessian(u, i, g), g);
      const ConeStatus c = cone_status(s, m, tol);
      if (c.worst_margin < r.worst_margin) {
        r.worst_margin = c.worst_margin;
        r.worst_index = i;
        r.worst_k = c.worst_k;
      }
      if (!c.inside && r.inside) {
        r.inside = false;
        r.first_outside = i;
        r.first_outside_k = c.worst_k;
      }
      if (mask && (*mask)[i]) terms.push_back(s.sigma[static_cast<std::size_t>(m)] / norm);
    }
    partial[b] = pairwise_sum(terms);
  });

  SweepResult out;
  for (const auto& r : local) {
    if (r.worst_margin < out.worst_margin) {
      out.worst_margin = r.worst_margin;
      out.worst_index = r.worst_index;
      out.worst_k = r.worst_k;
    }
    if (!r.inside && out.inside) {
      out.inside = false;
      out.first_outside = r.first_outside;
      out.first_outside_k = r.first_outside_k;
    }
  }
  out.mass = pairwise_sum(partial) * grid.cell_volume();
  return out;
}

void check_m(int m, int n, const char* where) {
  if (m < 1 || m > n) {
    throw std::invalid_argument(std::string(where) + ": m=" + std::to_string(m) +
                                " outside 1..n=" + std::to_string(n));
  }
}

}  // namespace

DensityField constant_density(const TorusGrid& grid, Domain domain, double value) {
  return DensityField{grid, domain, std::vector<double>(grid.size(), value)};
}

DensityField hessian_measure(const TorusField& u, int m) {
  return hessian_measure(u, m, Metric::identity(u.grid().n()));
}

DensityField hessian_measure(const TorusField& u, int m, const Metric& g) {
  const TorusGrid& grid = u.grid();
  check_m(m, grid.n(), "hessian_measure");
  if (g.dim() != grid.n()) throw std::invalid_argument("hessian_measure: metric dimension");
  DensityField d{grid, u.domain(), std::vector<double>(grid.size(), 0.0)};
  parallel_blocks(grid.size(), kBlock, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      if (!grid.is_valid(i, u.domain())) continue;
      d.values[i] = hessian_density(shifted_hessian(u, i, g), g, m);
    }
  });
  return d;
}

DensityField mixed_measure(std::span<const TorusField> us) {
  if (us.empty()) throw std::invalid_argument("mixed_measure: no fields");
  return mixed_measure(us, Metric::identity(us.front().grid().n()));
}

DensityField mixed_measure(std::span<const TorusField> us, const Metric& g) {
  if (us.empty()) throw std::invalid_argument("mixed_measure: no fields");
  const TorusGrid& grid = us.front().grid();
  const Domain domain = us.front().domain();
  check_m(static_cast<int>(us.size()), grid.n(), "mixed_measure");
  for (const auto& u : us) {
    require_same_grid(u.grid(), grid, "mixed_measure");
    if (u.domain() != domain) throw std::invalid_argument("mixed_measure: domain mismatch");
  }
  DensityField d{grid, domain, std::vector<double>(grid.size(), 0.0)};
  parallel_blocks(grid.size(), kBlock, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<HermitianMatrix> mats;
    mats.reserve(us.size());
    for (std::size_t i = begin; i < end; ++i) {
      if (!grid.is_valid(i, domain)) continue;
      mats.clear();
      for (const auto& u : us) mats.push_back(shifted_hessian(u, i, g));
      d.values[i] = mixed_hessian_density(mats, g);
    }
  });
  return d;
}

CheckReport verify_m_sh(const TorusField& u, int m, ConeTolerance tol) {
  return verify_m_sh(u, m, Metric::identity(u.grid().n()), tol);
}

CheckReport verify_m_sh(const TorusField& u, int m, const Metric& g, ConeTolerance tol) {
  check_m(m, u.grid().n(), "verify_m_sh");
  const SweepResult r = sweep(u, m, g, nullptr, tol);
  CheckReport report;
  report.suite = "verify-m-sh";
  report.outcome = r.inside ? Outcome::pass : Outcome::fail;
  report.worst_margin = r.worst_margin;
  report.tolerance = tol.absolute;
  report.provenance.n = u.grid().n();
  report.provenance.grid = u.grid().points_per_axis();
  const std::size_t where = r.inside ? r.worst_index : r.first_outside;
  nlohmann::json loc = grid_location(u.grid().multi_index(where));
  loc["k"] = r.inside ? r.worst_k : r.first_outside_k;
  if (!r.inside) report.location = loc;
  report.details = {{"m", m}, {"worst_point", loc}};
  return report;
}

double integrate(const DensityField& d, const RegionMask& mask) {
  require_same_grid(d.grid, mask.grid(), "integrate");
  const std::size_t blocks = block_count(d.grid.size(), kBlock);
  std::vector<double> partial(blocks, 0.0);
  parallel_blocks(d.grid.size(), kBlock, [&](std::size_t begin, std::size_t end, std::size_t b) {
    std::vector<double> terms;
    terms.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      if (mask[i] && d.grid.is_valid(i, d.domain)) terms.push_back(d.values[i]);
    }
    partial[b] = pairwise_sum(terms);
  });
  return pairwise_sum(partial) * d.grid.cell_volume();
}

double integrate_hessian_measure(const TorusField& u, int m, const RegionMask& mask) {
  check_m(m, u.grid().n(), "integrate_hessian_measure");
  require_same_grid(u.grid(), mask.grid(), "integrate_hessian_measure");
  return sweep(u, m, Metric::identity(u.grid().n()), &mask, ConeTolerance{}).mass;
}

double default_tol_mass(const TorusGrid& grid) {
  const double ratio = 64.0 * grid.spacing();
  return 1e-3 * ratio * ratio;
}

CheckReport total_mass_check(const TorusField& u, int m, std::optional<double> tol_mass) {
  const TorusGrid& grid = u.grid();
  check_m(m, grid.n(), "total_mass_check");
  if (!u.periodic()) {
    throw Refusal("total_mass_check: field is not periodic; total mass is only fixed on a closed manifold");
  }
  const double tol = tol_mass.value_or(default_tol_mass(grid));
  const RegionMask all = RegionMask::full(grid);
  const SweepResult r = sweep(u, m, Metric::identity(grid.n()), &all, ConeTolerance{});
  if (!r.inside) {
    nlohmann::json loc = grid_location(grid.multi_index(r.first_outside));
    loc["k"] = r.first_outside_k;
    throw Refusal("total_mass_check: field is not omega-" + std::to_string(m) + "-sh", loc);
  }
  CheckReport report;
  report.suite = "total-mass";
  const double error = r.mass - 1.0;
  report.worst_margin = tol - std::abs(error);
  report.tolerance = tol;
  report.outcome = std::abs(error) <= tol ? Outcome::pass : Outcome::fail;
  if (!report.passed()) report.location = nlohmann::json{{"m", m}, {"grid", grid.points_per_axis()}};
  report.provenance.n = grid.n();
  report.provenance.grid = grid.points_per_axis();
  report.details = {{"m", m}, {"mass", r.mass}, {"error", error}};
  return report;
}

RegionMask strict_sublevel(const TorusField& u, const TorusField& v) {
  require_same_grid(u.grid(), v.grid(), "strict_sublevel");
  RegionMask mask = RegionMask::empty(u.grid());
  for (std::size_t i = 0; i < u.grid().size(); ++i) mask.set(i, u[i] < v[i]);
  return mask;
}

void write_density(const std::filesystem::path& path, const DensityField& d,
                   const std::string& description) {
  write_field_file(path, d.grid, d.domain, FieldKind::density, d.values, description);
}

}  // namespace mhess
