#pragma once

// Field-level Hessian measures: densities of (omega + dd^c u)^m ^ omega^{n-m}
// and of mixed products against omega^n, cone verification over a grid and
// integration over masked regions.

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "mhess/hermitian.hpp"
#include "mhess/report.hpp"
#include "mhess/torus.hpp"

namespace mhess {

/// Density of a measure relative to omega^n. Negative entries are kept so
/// that diagnostics can see them.
struct DensityField {
  TorusGrid grid;
  Domain domain;
  std::vector<double> values;
};

DensityField constant_density(const TorusGrid& grid, Domain domain, double value);

DensityField hessian_measure(const TorusField& u, int m);
DensityField hessian_measure(const TorusField& u, int m, const Metric& g);

/// m = us.size(); all fields on the same grid and domain.
DensityField mixed_measure(std::span<const TorusField> us);
DensityField mixed_measure(std::span<const TorusField> us, const Metric& g);

/// Pass iff g + Hess u lies in the closed cone at every valid point. The
/// margin is min over points and k <= m of sigma_k / C(n,k).
CheckReport verify_m_sh(const TorusField& u, int m, ConeTolerance tol = {});
CheckReport verify_m_sh(const TorusField& u, int m, const Metric& g, ConeTolerance tol = {});

/// h^{2n} * pairwise sum of the density over masked valid points.
double integrate(const DensityField& d, const RegionMask& mask);

/// Same as integrate(hessian_measure(u, m), mask) without materializing the
/// density field.
double integrate_hessian_measure(const TorusField& u, int m, const RegionMask& mask);

/// 1e-3 at N = 64, scaled with h^2.
double default_tol_mass(const TorusGrid& grid);

/// |integral of H_m(u) over the torus - 1| <= tol. Refuses non-periodic
/// fields and fields that are not omega-m-sh.
CheckReport total_mass_check(const TorusField& u, int m, std::optional<double> tol_mass = {});

/// {u < v} with strict inequality; ties belong to neither {u < v} nor {v < u}.
RegionMask strict_sublevel(const TorusField& u, const TorusField& v);

void write_density(const std::filesystem::path& path, const DensityField& d,
                   const std::string& description = {});

}  // namespace mhess
