#include "mhess/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mhess/errors.hpp"
#include "mhess/parallel.hpp"

namespace mhess {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPiSq = 4.0 * kPi * kPi;

// Log branch c * L(r) and its first two r-derivatives, plus c L'(r) / r.
struct Branch {
  double value;
  double d1;
  double d2;
  double d1_over_r;
};

Branch branch(double c, double r, double eps) {
  const double e2 = eps * eps;
  const double q = r * r + e2;
  return {c * 0.5 * std::log(q), c * r / q, c * (e2 - r * r) / (q * q), c / q};
}

RadialHessian combine(const Branch& a, const Branch& b, double eps) {
  const double d = a.value - b.value;
  const double s = std::sqrt(d * d + eps * eps);
  const double ma = 0.5 * (1.0 + d / s);
  const double mb = 0.5 * (1.0 - d / s);
  const double maa = 0.5 * eps * eps / (s * s * s);
  RadialHessian h;
  h.h11 = 0.25 * (ma * a.d2 + maa * a.d1 * a.d1 + ma * a.d1_over_r);
  h.h22 = 0.25 * (mb * b.d2 + maa * b.d1 * b.d1 + mb * b.d1_over_r);
  h.h12 = -0.25 * maa * a.d1 * b.d1;
  return h;
}

// Midpoint cells on [lo, hi] in t = log r with at most `step` width.
struct LogAxis {
  double dt = 0.0;
  std::vector<double> r;
};

LogAxis log_axis(double lo, double hi, double step) {
  if (!(hi > lo)) throw std::invalid_argument("log axis: empty range");
  const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  LogAxis ax;
  ax.dt = (hi - lo) / static_cast<double>(cells);
  ax.r.resize(cells);
  for (std::size_t p = 0; p < cells; ++p) ax.r[p] = std::exp(lo + (static_cast<double>(p) + 0.5) * ax.dt);
  return ax;
}

void validate_quadrature(const RadialQuadrature& q) {
  if (!(q.radius > 0.0)) throw std::invalid_argument("quadrature radius must be > 0");
  if (q.radius > kMaxMassRadius) {
    throw Refusal("singular mass: radius " + std::to_string(q.radius) +
                      " reaches the crossing torus |z_i| = |z_j| = 1 (max " +
                      std::to_string(kMaxMassRadius) + ")",
                  nlohmann::json{{"radius", q.radius}});
  }
  if (!(q.depth > 0.0) || !(q.div >= 1.0)) {
    throw std::invalid_argument("quadrature depth must be > 0 and div >= 1");
  }
}

std::vector<Branch> branches(double c, const LogAxis& ax, double eps) {
  std::vector<Branch> out;
  out.reserve(ax.r.size());
  for (double r : ax.r) out.push_back(branch(c, r, eps));
  return out;
}

double relative_error(double measured, double reference) {
  return std::abs(measured - reference) / std::abs(reference);
}

void check_decreasing(std::span<const double> eps_seq, std::size_t min_size) {
  if (eps_seq.size() < min_size) {
    throw std::invalid_argument("eps sequence needs at least " + std::to_string(min_size) +
                                " entries");
  }
  for (std::size_t i = 0; i < eps_seq.size(); ++i) {
    if (!(eps_seq[i] > 0.0)) throw std::invalid_argument("eps values must be > 0");
    if (i > 0 && !(eps_seq[i] < eps_seq[i - 1])) {
      throw std::invalid_argument("eps sequence must be strictly decreasing");
    }
  }
}

const MassRow& finest(const MassTable& t) {
  if (t.rows.empty()) throw std::invalid_argument("empty mass table");
  return t.rows.back();
}

}  // namespace

double LogMaxSpec::coef_i() const { return orientation == Orientation::u ? 1.0 / k : k * k; }
double LogMaxSpec::coef_j() const { return orientation == Orientation::u ? k * k : 1.0 / k; }

LogMaxTerm LogMaxSpec::term() const { return LogMaxTerm{coef_i(), coef_j(), i, j, eps}; }

void validate(const LogMaxSpec& spec) {
  if (!(spec.k > 0.0) || !std::isfinite(spec.k)) throw std::invalid_argument("LogMaxSpec: k must be > 0");
  if (!(spec.eps > 0.0) || !std::isfinite(spec.eps)) {
    throw std::invalid_argument("LogMaxSpec: eps must be > 0");
  }
  if (spec.i == spec.j || spec.i < 0 || spec.j < 0) {
    throw std::invalid_argument("LogMaxSpec: needs two distinct coordinate indices");
  }
}

ClosedFormPotential regularized_potential(const LogMaxSpec& spec) {
  validate(spec);
  return ClosedFormPotential::log_max(spec.term());
}

RadialHessian radial_hessian(const LogMaxSpec& spec, double r1, double r2) {
  validate(spec);
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::invalid_argument("radial_hessian: radii must be > 0");
  return combine(branch(spec.coef_i(), r1, spec.eps), branch(spec.coef_j(), r2, spec.eps),
                 spec.eps);
}

double singular_mass(const LogMaxSpec& spec_u, const LogMaxSpec& spec_v, const RadialQuadrature& q) {
  validate(spec_u);
  validate(spec_v);
  validate_quadrature(q);
  if (spec_u.i != spec_v.i || spec_u.j != spec_v.j || spec_u.eps != spec_v.eps) {
    throw std::invalid_argument("singular_mass: specs must share coordinates and eps");
  }
  const double eps = spec_u.eps;
  const bool diagonal = spec_u.k == spec_v.k && spec_u.orientation == spec_v.orientation;
  const double c1 = std::max({1.0, spec_u.coef_i(), spec_v.coef_i()});
  const double c2 = std::max({1.0, spec_u.coef_j(), spec_v.coef_j()});
  const double lo = std::log(eps) - q.depth;
  const double hi = std::log(q.radius);
  const LogAxis ax1 = log_axis(lo, hi, eps / (q.div * c1));
  const LogAxis ax2 = log_axis(lo, hi, eps / (q.div * c2));

  const auto ua = branches(spec_u.coef_i(), ax1, eps);
  const auto ub = branches(spec_u.coef_j(), ax2, eps);
  const auto va = branches(spec_v.coef_i(), ax1, eps);
  const auto vb = branches(spec_v.coef_j(), ax2, eps);
  std::vector<double> w2(ax2.r.size());
  for (std::size_t p = 0; p < w2.size(); ++p) w2[p] = ax2.r[p] * ax2.r[p];

  const std::size_t rows = ax1.r.size();
  std::vector<double> row_sums(rows, 0.0);
  parallel_blocks(rows, 8, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<double> terms(w2.size());
    for (std::size_t p = begin; p < end; ++p) {
      for (std::size_t s = 0; s < w2.size(); ++s) {
        const RadialHessian hu = combine(ua[p], ub[s], eps);
        double density;
        if (diagonal) {
          density = hu.h11 * hu.h22 - hu.h12 * hu.h12;
        } else {
          const RadialHessian hv = combine(va[p], vb[s], eps);
          density = 0.5 * (hu.h11 * hv.h22 + hv.h11 * hu.h22 - 2.0 * hu.h12 * hv.h12);
        }
        terms[s] = density * w2[s];
      }
      row_sums[p] = pairwise_sum(terms) * ax1.r[p] * ax1.r[p];
    }
  });
  return pairwise_sum(row_sums) * kTwoPiSq * ax1.dt * ax2.dt;
}

double calibration_mass_1d(double eps, const RadialQuadrature& q) {
  if (!(eps > 0.0)) throw std::invalid_argument("calibration_mass_1d: eps must be > 0");
  validate_quadrature(q);
  const LogAxis ax = log_axis(std::log(eps) - q.depth, std::log(q.radius), eps / q.div);
  std::vector<double> terms;
  terms.reserve(ax.r.size());
  for (double r : ax.r) {
    const Branch b = branch(1.0, r, eps);
    terms.push_back(0.25 * (b.d2 + b.d1_over_r) * r * r);
  }
  return pairwise_sum(terms) * 2.0 * kPi * ax.dt;
}

double calibration_mass_1d_exact(double eps, double radius) {
  const double r2 = radius * radius;
  return 0.5 * kPi * r2 / (r2 + eps * eps);
}

double convention_constant(double eps, const RadialQuadrature& q) {
  const double m1 = calibration_mass_1d(eps, q);
  return (2.0 * kPi / m1) * (2.0 * kPi / m1);
}

double reference_a(double k) { return kTwoPiSq * k / 2.0; }
double reference_b(double k) { return kTwoPiSq / (2.0 * k * k); }

std::string MassTable::to_csv() const {
  std::ostringstream out;
  out.precision(12);
  out << "eps,h,mass_a,mass_b,ratio\n";
  for (const auto& r : rows) {
    out << r.eps << ',' << r.h << ',' << r.mass_a << ',' << r.mass_b << ',' << r.ratio << '\n';
  }
  return out.str();
}

MassTable mass_table(double k, std::span<const double> eps_seq, const RadialQuadrature& q) {
  check_decreasing(eps_seq, 1);
  MassTable t;
  t.k = k;
  for (double eps : eps_seq) {
    const LogMaxSpec u{k, eps, 0, 1, Orientation::u};
    const LogMaxSpec v{k, eps, 0, 1, Orientation::v};
    MassRow row;
    row.eps = eps;
    row.h = eps / (q.div * std::max({1.0, k * k, 1.0 / k}));
    row.mass_a = singular_mass(u, u, q);
    row.mass_b = singular_mass(u, v, q);
    row.ratio = row.mass_a / row.mass_b;
    t.rows.push_back(row);
  }
  return t;
}

std::vector<double> default_eps_sequence() { return {0.1, 0.05, 0.025}; }

CheckReport verify_violation(double k, std::span<const double> eps_seq, const RadialQuadrature& q) {
  if (!(k > 0.0)) throw std::invalid_argument("verify_violation: k must be > 0");
  const MassTable table = mass_table(k, eps_seq, q);
  const MassRow& row = finest(table);
  const LogMaxSpec v{k, row.eps, 0, 1, Orientation::v};
  const double mass_a_v = singular_mass(v, v, q);
  const double geometric = std::sqrt(row.mass_a * mass_a_v);
  const double ratio = row.mass_b / geometric;
  const bool violation = ratio < 1.0 - kViolationMargin;
  const bool equality = std::abs(ratio - 1.0) <= kViolationMargin;

  std::string predicted;
  bool pass = false;
  if (k > 1.0) {
    predicted = "violation";
    pass = violation;
  } else if (k == 1.0) {
    predicted = "equality";
    pass = equality;
  } else {
    predicted = "no violation";
    pass = !violation;
  }
  // b / a read off the mixed covolume of the two Newton segments.
  const double covolume_ratio = std::min(std::pow(k, 4.0), 1.0 / (k * k)) / k;

  CheckReport r;
  r.suite = "violation";
  r.outcome = pass ? Outcome::pass : Outcome::fail;
  r.worst_margin = k > 1.0 ? (1.0 - kViolationMargin) - ratio
                 : k == 1.0 ? kViolationMargin - std::abs(ratio - 1.0)
                            : ratio - (1.0 - kViolationMargin);
  r.tolerance = kViolationMargin;
  if (!pass) r.location = nlohmann::json{{"k", k}, {"eps", row.eps}};
  for (const auto& t : table.rows) r.provenance.eps.push_back(t.eps);
  r.details = {{"k", k},
               {"violation", violation},
               {"predicted", predicted},
               {"mass_a_u", row.mass_a},
               {"mass_a_v", mass_a_v},
               {"mass_b", row.mass_b},
               {"b_over_geometric_mean", ratio},
               {"reference_b_over_a", 1.0 / (k * k * k)},
               {"covolume_b_over_a", covolume_ratio},
               {"table_csv", table.to_csv()}};
  return r;
}

CheckReport check_ratio_law(std::span<const MassTable> tables, double rel_tol) {
  CheckReport r;
  r.suite = "ratio-law";
  r.tolerance = rel_tol;
  r.worst_margin = std::numeric_limits<double>::infinity();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& t : tables) {
    const MassRow& row = finest(t);
    const double expected = t.k * t.k * t.k;
    const double err = relative_error(row.ratio, expected);
    const double margin = rel_tol - err;
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      if (margin < 0.0) r.location = nlohmann::json{{"k", t.k}, {"eps", row.eps}};
    }
    rows.push_back({{"k", t.k}, {"ratio", row.ratio}, {"expected", expected}, {"rel_error", err},
                    {"table_csv", t.to_csv()}});
    for (const auto& x : t.rows) {
      if (std::find(r.provenance.eps.begin(), r.provenance.eps.end(), x.eps) == r.provenance.eps.end()) {
        r.provenance.eps.push_back(x.eps);
      }
    }
  }
  r.outcome = r.worst_margin >= 0.0 ? Outcome::pass : Outcome::fail;
  if (r.passed()) r.location = nullptr;
  r.details = {{"rows", rows}};
  return r;
}

CheckReport check_ratio_law(std::span<const double> ks, std::span<const double> eps_seq,
                            double rel_tol, const RadialQuadrature& q) {
  std::vector<MassTable> tables;
  for (double k : ks) tables.push_back(mass_table(k, eps_seq, q));
  return check_ratio_law(tables, rel_tol);
}

CheckReport check_calibration(std::span<const MassTable> tables, double rel_tol,
                              const RadialQuadrature& q) {
  if (tables.empty()) throw std::invalid_argument("check_calibration: no tables");
  const double eps = finest(tables.front()).eps;
  for (const auto& t : tables) {
    if (finest(t).eps != eps) throw std::invalid_argument("check_calibration: tables disagree on eps");
  }
  const double m1 = calibration_mass_1d(eps, q);
  const double c = convention_constant(eps, q);

  CheckReport r;
  r.suite = "calibration";
  r.tolerance = rel_tol;
  r.worst_margin = std::numeric_limits<double>::infinity();
  r.provenance.eps = {eps};
  r.provenance.c_conv = c;
  r.provenance.c_conv_measured = true;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& t : tables) {
    const MassRow& row = finest(t);
    const double ea = relative_error(c * row.mass_a, reference_a(t.k));
    const double eb = relative_error(c * row.mass_b, reference_b(t.k));
    const double margin = rel_tol - std::max(ea, eb);
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      if (margin < 0.0) r.location = nlohmann::json{{"k", t.k}, {"eps", eps}};
    }
    rows.push_back({{"k", t.k},
                    {"scaled_a", c * row.mass_a},
                    {"reference_a", reference_a(t.k)},
                    {"scaled_b", c * row.mass_b},
                    {"reference_b", reference_b(t.k)},
                    {"rel_error_a", ea},
                    {"rel_error_b", eb}});
  }
  r.outcome = r.worst_margin >= 0.0 ? Outcome::pass : Outcome::fail;
  if (r.passed()) r.location = nullptr;
  r.details = {{"mass_1d", m1},
               {"mass_1d_exact", calibration_mass_1d_exact(eps, q.radius)},
               {"c_conv", c},
               {"c_conv_nominal", kNominalConventionConstant},
               {"rows", rows}};
  return r;
}

CheckReport check_calibration(std::span<const double> ks, double eps, double rel_tol,
                              const RadialQuadrature& q) {
  std::vector<MassTable> tables;
  const double seq[] = {eps};
  for (double k : ks) tables.push_back(mass_table(k, seq, q));
  return check_calibration(tables, rel_tol, q);
}

double gradient_norm_squared(W12Subject subject, const LogMaxSpec& spec, const W12Settings& w) {
  validate(spec);
  if (!(w.radius > 0.0) || !(w.depth > 0.0) || !(w.div >= 1.0)) {
    throw std::invalid_argument("W12Settings: radius, depth must be > 0 and div >= 1");
  }
  if (w.radius > kMaxMassRadius) {
    throw Refusal("gradient_norm_squared: radius beyond the unit polydisc chart",
                  nlohmann::json{{"radius", w.radius}});
  }
  const double eps = spec.eps;
  const double hi = std::log(w.radius);

  if (subject != W12Subject::log_max) {
    // Radial integrand; the angular factor integrates to 1/2 exactly.
    const bool quadratic = subject == W12Subject::quadratic;
    const double lo = quadratic ? hi - 20.0 : std::log(eps) - w.depth;
    const double step = quadratic ? 1.0 / 512.0 : eps / w.div;
    const LogAxis ax = log_axis(lo, hi, step);
    std::vector<double> terms;
    terms.reserve(ax.r.size());
    for (double rho : ax.r) {
      const double q = rho * rho + eps * eps;
      const double g2 = quadratic ? 4.0 * rho * rho : rho * rho / (q * q);
      const double rho2 = rho * rho;
      terms.push_back(g2 * rho2 * rho2);
    }
    return pairwise_sum(terms) * 2.0 * kPi * kPi * ax.dt;
  }

  const double c = std::max({1.0, spec.coef_i(), spec.coef_j()});
  const double step = eps / (w.div * c);
  const LogAxis ax = log_axis(std::log(eps) - w.depth, hi, step);
  const auto phis = static_cast<std::size_t>(std::ceil(0.5 * kPi / step));
  const double dphi = 0.5 * kPi / static_cast<double>(phis);
  std::vector<double> row_sums(ax.r.size(), 0.0);
  parallel_blocks(ax.r.size(), 8, [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<double> terms(phis);
    for (std::size_t p = begin; p < end; ++p) {
      const double rho = ax.r[p];
      for (std::size_t a = 0; a < phis; ++a) {
        const double phi = (static_cast<double>(a) + 0.5) * dphi;
        const double cs = std::cos(phi), sn = std::sin(phi);
        const Branch b1 = branch(spec.coef_i(), rho * cs, eps);
        const Branch b2 = branch(spec.coef_j(), rho * sn, eps);
        const double d = b1.value - b2.value;
        const double s = std::sqrt(d * d + eps * eps);
        const double g1 = 0.5 * (1.0 + d / s) * b1.d1;
        const double g2 = 0.5 * (1.0 - d / s) * b2.d1;
        terms[a] = (g1 * g1 + g2 * g2) * cs * sn;
      }
      const double rho2 = rho * rho;
      row_sums[p] = pairwise_sum(terms) * rho2 * rho2;
    }
  });
  return pairwise_sum(row_sums) * kTwoPiSq * ax.dt * dphi;
}

double gradient_norm_squared_log_norm_exact(double eps, double radius) {
  const double e = eps * eps;
  const double s = radius * radius;
  return kPi * kPi * (s - 2.0 * e * std::log1p(s / e) + e - e * e / (s + e));
}

double aitken_limit(double x0, double x1, double x2) {
  const double d1 = x1 - x0;
  const double d2 = x2 - x1;
  const double denom = d2 - d1;
  if (denom == 0.0 || !std::isfinite(denom)) return x2;
  return x2 - d2 * d2 / denom;
}

CheckReport w12_boundedness(W12Subject subject, const LogMaxSpec& spec,
                            std::span<const double> eps_seq, const W12Settings& w,
                            const RadialQuadrature& q, double mass_rel_tol) {
  check_decreasing(eps_seq, 3);
  std::vector<double> norms;
  for (double eps : eps_seq) {
    LogMaxSpec s = spec;
    s.eps = eps;
    norms.push_back(gradient_norm_squared(subject, s, w));
  }

  CheckReport r;
  r.suite = "w12";
  r.provenance.eps.assign(eps_seq.begin(), eps_seq.end());
  r.tolerance = mass_rel_tol;

  double scale = 0.0;
  for (double g : norms) scale = std::max(scale, std::abs(g));
  std::vector<double> inc;
  for (std::size_t i = 1; i < norms.size(); ++i) inc.push_back(norms[i] - norms[i - 1]);
  const bool constant = std::all_of(inc.begin(), inc.end(),
                                    [&](double d) { return std::abs(d) <= 1e-12 * scale; });
  bool bounded = constant;
  double limit = norms.back();
  double worst_shrink = 0.0;
  nlohmann::json where = nullptr;
  if (!constant) {
    bounded = true;
    for (std::size_t i = 0; i < inc.size(); ++i) {
      if ((inc[i] > 0.0) != (inc[0] > 0.0) || inc[i] == 0.0) {
        bounded = false;
        where = {{"eps", eps_seq[i + 1]}, {"reason", "increment changes sign"}};
        break;
      }
      if (i > 0) {
        const double shrink = std::abs(inc[i]) / std::abs(inc[i - 1]);
        worst_shrink = std::max(worst_shrink, shrink);
        if (!(shrink < 1.0)) {
          bounded = false;
          where = {{"eps", eps_seq[i + 1]}, {"reason", "increment does not shrink"}};
          break;
        }
      }
    }
    if (bounded) {
      const double rho = inc.back() / inc[inc.size() - 2];
      limit = norms.back() + inc.back() * rho / (1.0 - rho);
      bounded = std::isfinite(limit);
    }
  }

  nlohmann::json masses = nlohmann::json::array();
  double mass_limit = 0.0;
  double mass_dev = 0.0;
  bool mass_ok = true;
  if (subject == W12Subject::log_max) {
    std::vector<double> ms;
    for (double eps : eps_seq) {
      LogMaxSpec s = spec;
      s.eps = eps;
      ms.push_back(singular_mass(s, s, q));
    }
    const std::size_t c = ms.size();
    mass_limit = aitken_limit(ms[c - 3], ms[c - 2], ms[c - 1]);
    for (std::size_t i = 0; i < c; ++i) {
      const double dev = relative_error(ms[i], mass_limit);
      if (dev > mass_dev) {
        mass_dev = dev;
        if (dev > mass_rel_tol && where.is_null()) {
          where = {{"eps", eps_seq[i]}, {"reason", "singular mass leaves its limit trend"}};
        }
      }
      masses.push_back(ms[i]);
    }
    mass_ok = mass_dev <= mass_rel_tol;
  }

  r.outcome = bounded && mass_ok ? Outcome::pass : Outcome::fail;
  r.worst_margin = subject == W12Subject::log_max ? mass_rel_tol - mass_dev
                                                 : (bounded ? 1.0 - worst_shrink : -1.0);
  if (!bounded && r.worst_margin >= 0.0) r.worst_margin = -1.0;
  if (!r.passed()) r.location = where.is_null() ? nlohmann::json{{"eps", eps_seq.back()}} : where;
  const char* names[] = {"log_max", "log_norm", "quadratic"};
  r.details = {{"subject", names[static_cast<int>(subject)]},
               {"k", spec.k},
               {"radius", w.radius},
               {"gradient_norm_squared", norms},
               {"increments", inc},
               {"bounded", bounded},
               {"limit_estimate", limit},
               {"worst_increment_ratio", worst_shrink},
               {"singular_mass", masses},
               {"singular_mass_limit", mass_limit},
               {"singular_mass_max_rel_deviation", mass_dev}};
  return r;
}

}  // namespace mhess
