#include "mhess_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "mhess/capacity.hpp"
#include "mhess/errors.hpp"
#include "mhess/field_io.hpp"
#include "mhess/inequalities.hpp"
#include "mhess/instances.hpp"
#include "mhess/measures.hpp"
#include "mhess/sampling.hpp"
#include "mhess/singular.hpp"
#include "mhess_cli/svg.hpp"

namespace mhess::cli {

namespace {

int status_of(const CheckReport& r) {
  switch (r.outcome) {
    case Outcome::pass: return kPass;
    case Outcome::fail: return kFail;
    case Outcome::no_claim: return kRefused;
  }
  return kFail;
}

class Collector {
 public:
  explicit Collector(CommandResult& result) : result_(result) {}

  void add(const CheckReport& r) {
    validate(r);
    result_.reports.push_back(to_json(r));
    result_.status = combine_status(result_.status, status_of(r));
  }

  /// Runs fn; a Refusal becomes a refusal record for `suite`.
  void guarded(const std::string& suite, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Refusal& e) {
      result_.reports.push_back({{"suite", suite},
                                 {"outcome", "refused"},
                                 {"passed", false},
                                 {"message", e.what()},
                                 {"location", e.location()}});
      result_.status = combine_status(result_.status, kRefused);
    }
  }

  void artifact(const RunConfig& cfg, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(cfg.out);
    std::ofstream(cfg.out / name, std::ios::binary) << content;
    result_.artifacts.push_back(name);
  }

 private:
  CommandResult& result_;
};

std::string fmt(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

TorusGrid grid_of(const RunConfig& cfg) { return TorusGrid(cfg.n, cfg.grid); }

RadialQuadrature quadrature_of(const RunConfig& cfg) {
  RadialQuadrature q;
  q.radius = cfg.radius;
  return q;
}

void check_garding(const RunConfig& cfg, Collector& c) {
  std::mt19937_64 rng(cfg.seed);
  const Metric g = Metric::identity(cfg.n);
  double worst = std::numeric_limits<double>::infinity();
  double worst_equality = 0.0;
  nlohmann::json where = nullptr;
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    std::vector<HermitianMatrix> tuple;
    for (int i = 0; i < cfg.m; ++i) tuple.push_back(sampling::cone_matrix(rng, cfg.n, cfg.m));
    const CheckReport r = garding_mixed_check(tuple, g);
    if (r.worst_margin < worst) {
      worst = r.worst_margin;
      where = {{"sample", s}};
    }
    const std::vector<HermitianMatrix> diagonal(static_cast<std::size_t>(cfg.m), tuple.front());
    const CheckReport d = garding_mixed_check(diagonal, g);
    const double scale = std::max(1.0, std::abs(d.details["mixed_density"].get<double>()));
    worst_equality = std::max(worst_equality, std::abs(d.worst_margin) / scale);
  }
  CheckReport r;
  r.suite = "garding-suite";
  r.tolerance = 1e-9;
  r.worst_margin = worst;
  const bool ok = worst >= -1e-9 && worst_equality <= 1e-12;
  r.outcome = ok ? Outcome::pass : Outcome::fail;
  if (!ok) r.location = where.is_null() ? nlohmann::json{{"sample", 0}} : where;
  r.provenance.n = cfg.n;
  r.provenance.seed = cfg.seed;
  r.details = {{"m", cfg.m},
               {"samples", cfg.samples},
               {"worst_diagonal_relative_gap", worst_equality},
               {"equality_tolerance", 1e-12}};
  c.add(r);
}

std::vector<TorusField> mixed_fields(const RunConfig& cfg) {
  std::vector<TorusField> us;
  if (!cfg.fields.empty()) {
    for (const auto& path : cfg.fields) us.push_back(read_field(path));
    return us;
  }
  if (cfg.m != 2) {
    throw ConfigError("m", "the default trig pair needs m = 2; pass --fields for other m");
  }
  const TorusGrid grid = grid_of(cfg);
  us.push_back(sample(instances::trig_pair_first(cfg.n), grid));
  us.push_back(sample(instances::trig_pair_second(cfg.n), grid));
  return us;
}

void verify_mixed(const RunConfig& cfg, Collector& c) {
  c.guarded("mixed-inequality", [&] {
    const std::vector<TorusField> us = mixed_fields(cfg);
    const TorusField& first = us.front();
    const DensityField mu = constant_density(first.grid(), first.domain(), 1.0);
    std::vector<DensityField> fs;
    for (const auto& u : us) {
      DensityField f = hessian_measure(u, cfg.m);
      for (auto& v : f.values) v = std::max(v, 0.0);
      fs.push_back(std::move(f));
    }
    c.add(check_mixed_inequality(us, mu, fs));
  });
}

ClosedFormPotential mass_instance(int n) {
  return n >= 2 ? instances::coupled_trig(n) : instances::trig_product(0.02);
}

void mass_conservation(const RunConfig& cfg, Collector& c) {
  c.guarded("total-mass", [&] {
    const TorusGrid coarse = grid_of(cfg);
    const CheckReport r = total_mass_check(sample(mass_instance(cfg.n), coarse), cfg.m, cfg.tol_mass);
    c.add(r);
    if (!cfg.refine) return;
    const TorusGrid fine(cfg.n, 2 * cfg.grid);
    const CheckReport rf = total_mass_check(sample(mass_instance(cfg.n), fine), cfg.m);
    c.add(rf);
    const double e0 = std::abs(r.details["error"].get<double>());
    const double e1 = std::abs(rf.details["error"].get<double>());
    constexpr double kRoundoffFloor = 1e-12;
    CheckReport conv;
    conv.suite = "mass-convergence";
    conv.tolerance = 3.5;
    const bool exact = e0 <= kRoundoffFloor && e1 <= kRoundoffFloor;
    const double shrink = exact ? std::numeric_limits<double>::infinity() : e0 / e1;
    conv.worst_margin = shrink - 3.5;
    conv.outcome = exact || shrink >= 3.5 ? Outcome::pass : Outcome::fail;
    if (!conv.passed()) conv.location = nlohmann::json{{"grid", {cfg.grid, 2 * cfg.grid}}};
    conv.provenance.n = cfg.n;
    conv.provenance.grid = 2 * cfg.grid;
    conv.details = {{"m", cfg.m}, {"error_coarse", e0}, {"error_fine", e1}, {"shrink", shrink},
                    {"exact_to_roundoff", exact}};
    c.add(conv);
  });
}

void compare(const RunConfig& cfg, Collector& c) {
  c.guarded("comparison", [&] {
    const TorusGrid grid = grid_of(cfg);
    const TorusField u = sample(instances::trig_pair_first(cfg.n), grid);
    const TorusField v = sample(instances::trig_pair_second(cfg.n) + ClosedFormPotential::constant(-0.01), grid);
    c.add(check_comparison(u, v, cfg.m, cfg.tol_mass));
  });
}

void dominate(const RunConfig& cfg, Collector& c) {
  c.guarded("domination", [&] {
    const TorusGrid grid = grid_of(cfg);
    const ClosedFormPotential base = instances::trig_pair_first(cfg.n);
    const TorusField u = sample(base, grid);
    const ClosedFormPotential shift =
        cfg.variant == "below"
            ? ClosedFormPotential::constant(-0.1) + instances::axis_wave(cfg.n, 0, -0.05)
            : ClosedFormPotential::constant(0.02) + instances::axis_wave(cfg.n, 0, 0.01);
    const TorusField v = sample(base + shift, grid);
    c.add(check_domination(u, v, cfg.m, cfg.tol_mass));
  });
}

void singular_mass_cmd(const RunConfig& cfg, Collector& c) {
  c.guarded("singular-mass", [&] {
    const RadialQuadrature q = quadrature_of(cfg);
    std::vector<MassTable> tables;
    std::vector<Series> ratio_series;
    for (double k : cfg.k) {
      tables.push_back(mass_table(k, cfg.eps, q));
      const MassTable& t = tables.back();
      c.artifact(cfg, "mass_table_k" + fmt(k) + ".csv", t.to_csv());
      Series s{"a/b, k=" + fmt(k), {}, {}};
      Series ref{"k^3, k=" + fmt(k), {}, {}};
      for (const auto& row : t.rows) {
        s.x.push_back(row.eps);
        s.y.push_back(row.ratio);
        ref.x.push_back(row.eps);
        ref.y.push_back(k * k * k);
      }
      ratio_series.push_back(std::move(s));
      ratio_series.push_back(std::move(ref));
    }
    c.artifact(cfg, "mass_ratio.svg",
               line_chart("singular mass ratio a/b against eps", "eps", "a/b", ratio_series));
    c.add(check_ratio_law(tables));
    c.add(check_calibration(tables, 0.05, q));
  });
}

void violation_cmd(const RunConfig& cfg, Collector& c) {
  for (double k : cfg.k) {
    c.guarded("violation", [&] { c.add(verify_violation(k, cfg.eps, quadrature_of(cfg))); });
  }
}

void w12_cmd(const RunConfig& cfg, Collector& c) {
  W12Settings w;
  w.radius = cfg.radius;
  std::vector<Series> series;
  std::ostringstream csv;
  csv.precision(12);
  csv << "k,eps,gradient_norm_squared,singular_mass\n";
  for (double k : cfg.k) {
    c.guarded("w12", [&] {
      const LogMaxSpec spec{k, cfg.eps.front(), 0, 1, Orientation::u};
      const CheckReport r = w12_boundedness(W12Subject::log_max, spec, cfg.eps, w, quadrature_of(cfg));
      c.add(r);
      Series s{"k=" + fmt(k), cfg.eps, r.details["gradient_norm_squared"].get<std::vector<double>>()};
      const auto masses = r.details["singular_mass"].get<std::vector<double>>();
      for (std::size_t i = 0; i < cfg.eps.size(); ++i) {
        csv << k << ',' << cfg.eps[i] << ',' << s.y[i] << ',' << masses[i] << '\n';
      }
      series.push_back(std::move(s));
    });
  }
  if (!series.empty()) {
    c.artifact(cfg, "w12_table.csv", csv.str());
    c.artifact(cfg, "w12.svg", line_chart("gradient energy over the ball", "eps", "|grad u|^2", series));
  }
}

void capacity_cmd(const RunConfig& cfg, Collector& c) {
  c.guarded("capacity", [&] {
    const TorusGrid grid = grid_of(cfg);
    RegionMask E = RegionMask::empty(grid);
    if (cfg.region == "full") {
      E = RegionMask::full(grid);
    } else if (cfg.region == "slab") {
      E = RegionMask::from_predicate(grid, Domain::periodic, [](std::span<const double> x) { return x[0] < 0.5; });
    }
    const AdmissibleFamily family = AdmissibleFamily::trig_default(cfg.n);
    const CapacityEstimate est = capacity_lower_bound(E, family, cfg.m, cfg.budget, cfg.seed);
    CheckReport r = capacity_report(est, E, cfg.m, cfg.tol_mass);
    const double recheck = evaluate_certificate(E, family, cfg.m, est.certificate.theta);
    r.details["certificate_recheck"] = recheck;
    r.details["certificate_reproduced"] = recheck == est.certificate.value;
    r.details["region"] = cfg.region;
    if (recheck != est.certificate.value) {
      r.outcome = Outcome::fail;
      r.location = nlohmann::json{{"theta", est.certificate.theta}};
    }
    c.add(r);
  });
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream o;
  o << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return o.str();
}

}  // namespace

int combine_status(int a, int b) {
  if (a == kFail || b == kFail) return kFail;
  if (a == kRefused || b == kRefused) return kRefused;
  return kPass;
}

CommandResult execute(const std::string& command, const RunConfig& cfg) {
  validate(cfg);
  CommandResult result;
  Collector c(result);
  using Fn = void (*)(const RunConfig&, Collector&);
  const std::vector<std::pair<std::string, Fn>> table{
      {"check-garding", check_garding}, {"verify-mixed", verify_mixed},
      {"mass-conservation", mass_conservation}, {"compare", compare},
      {"dominate", dominate}, {"singular-mass", singular_mass_cmd},
      {"violation", violation_cmd}, {"w12", w12_cmd}, {"capacity", capacity_cmd}};
  bool found = false;
  for (const auto& [name, fn] : table) {
    if (command == name || command == "all") {
      fn(cfg, c);
      found = true;
    }
  }
  if (!found) throw ConfigError("subcommand", "unknown subcommand '" + command + "'");
  return result;
}

int run(const std::string& command, const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  CommandResult result = execute(command, cfg);
  std::filesystem::create_directories(cfg.out);
  nlohmann::json doc = {{"schema", "mhess.run/1"},
                        {"command", command},
                        {"config", to_json(cfg)},
                        {"reports", result.reports},
                        {"artifacts", result.artifacts},
                        {"status", result.status}};
  std::ofstream(cfg.out / (command + ".json"), std::ios::binary) << doc.dump(2) << '\n';
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream log(cfg.out / "mhess.log", std::ios::app);
  log << timestamp() << " command=" << command << " status=" << result.status
      << " reports=" << result.reports.size() << " seconds=" << std::fixed << std::setprecision(3)
      << seconds << '\n';
  return result.status;
}

}  // namespace mhess::cli
