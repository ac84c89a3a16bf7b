#include "mhess/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mhess {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double half_log(double r2, double eps) { return 0.5 * std::log(r2 + eps * eps); }

double abs2(std::span<const double> x, int j) {
  const auto a = static_cast<std::size_t>(2 * j);
  return x[a] * x[a] + x[a + 1] * x[a + 1];
}

}  // namespace

double smooth_max(double a, double b, double eps) {
  const double d = a - b;
  return 0.5 * (a + b + std::sqrt(d * d + eps * eps));
}

ClosedFormPotential ClosedFormPotential::constant(double c) {
  ClosedFormPotential p;
  p.add(1.0, ConstantTerm{c});
  return p;
}

ClosedFormPotential ClosedFormPotential::quadratic(double c) {
  ClosedFormPotential p;
  p.add(c, QuadraticTerm{});
  return p;
}

ClosedFormPotential ClosedFormPotential::holomorphic_monomial(Complex c, std::vector<int> exponents) {
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("holomorphic monomial exponents must be >= 0");
  }
  ClosedFormPotential p;
  p.add(1.0, HolomorphicMonomialTerm{c, std::move(exponents)});
  return p;
}

ClosedFormPotential ClosedFormPotential::trig_product(double c) {
  ClosedFormPotential p;
  p.add(c, TrigProductTerm{});
  return p;
}

ClosedFormPotential ClosedFormPotential::trig_wave(double c, std::vector<int> wave, double phase) {
  if (wave.empty() || wave.size() % 2 != 0) {
    throw std::invalid_argument("trig wave vector needs 2n integer entries");
  }
  ClosedFormPotential p;
  p.add(c, TrigWaveTerm{std::move(wave), phase});
  return p;
}

ClosedFormPotential ClosedFormPotential::log_max(const LogMaxTerm& term, double scale) {
  if (!(term.eps > 0.0)) throw std::invalid_argument("log-max regularization eps must be > 0");
  if (term.i == term.j || term.i < 0 || term.j < 0) {
    throw std::invalid_argument("log-max needs two distinct coordinate indices");
  }
  ClosedFormPotential p;
  p.add(scale, term);
  return p;
}

ClosedFormPotential ClosedFormPotential::log_norm(const LogNormTerm& term, double scale) {
  if (!(term.eps > 0.0)) throw std::invalid_argument("log-norm regularization eps must be > 0");
  if (term.i == term.j || term.i < 0 || term.j < 0) {
    throw std::invalid_argument("log-norm needs two distinct coordinate indices");
  }
  ClosedFormPotential p;
  p.add(scale, term);
  return p;
}

void ClosedFormPotential::add(double scale, Kind kind) {
  if (!std::isfinite(scale)) throw std::invalid_argument("potential scale must be finite");
  terms_.push_back(Term{scale, std::move(kind)});
}

ClosedFormPotential& ClosedFormPotential::operator+=(const ClosedFormPotential& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

ClosedFormPotential& ClosedFormPotential::operator*=(double s) {
  for (auto& t : terms_) {
    if (auto* c = std::get_if<ConstantTerm>(&t.kind)) {
      c->value *= s;
    } else {
      t.scale *= s;
    }
  }
  return *this;
}

bool ClosedFormPotential::periodic() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return std::holds_alternative<ConstantTerm>(t.kind) ||
           std::holds_alternative<TrigProductTerm>(t.kind) ||
           std::holds_alternative<TrigWaveTerm>(t.kind) || t.scale == 0.0;
  });
}

int ClosedFormPotential::min_dim() const {
  int n = 1;
  for (const auto& t : terms_) {
    std::visit(Overloaded{
                   [](const ConstantTerm&) {}, [](const QuadraticTerm&) {},
                   [](const TrigProductTerm&) {},
                   [&](const HolomorphicMonomialTerm& h) {
                     n = std::max(n, static_cast<int>(h.exponents.size()));
                   },
                   [&](const TrigWaveTerm& w) { n = std::max(n, static_cast<int>(w.wave.size() / 2)); },
                   [&](const LogMaxTerm& l) { n = std::max({n, l.i + 1, l.j + 1}); },
                   [&](const LogNormTerm& l) { n = std::max({n, l.i + 1, l.j + 1}); },
               },
               t.kind);
  }
  return n;
}

double ClosedFormPotential::operator()(std::span<const double> x) const {
  const int n = static_cast<int>(x.size() / 2);
  double total = 0.0;
  for (const auto& t : terms_) {
    const double v = std::visit(
        Overloaded{
            [](const ConstantTerm& c) { return c.value; },
            [&](const QuadraticTerm&) {
              double s = 0.0;
              for (int j = 0; j < n; ++j) s += abs2(x, j);
              return s;
            },
            [&](const HolomorphicMonomialTerm& h) {
              Complex prod = h.coefficient;
              for (std::size_t j = 0; j < h.exponents.size(); ++j) {
                const Complex z(x[2 * j], x[2 * j + 1]);
                for (int e = 0; e < h.exponents[j]; ++e) prod *= z;
              }
              return prod.real();
            },
            [&](const TrigProductTerm&) {
              double s = 0.0;
              for (int j = 0; j < n; ++j) {
                const auto a = static_cast<std::size_t>(2 * j);
                s += std::cos(kTwoPi * x[a]) * std::cos(kTwoPi * x[a + 1]);
              }
              return s;
            },
            [&](const TrigWaveTerm& w) {
              double arg = w.phase;
              for (std::size_t a = 0; a < w.wave.size(); ++a) arg += kTwoPi * w.wave[a] * x[a];
              return std::cos(arg);
            },
            [&](const LogMaxTerm& l) {
              return smooth_max(l.coef_i * half_log(abs2(x, l.i), l.eps),
                                l.coef_j * half_log(abs2(x, l.j), l.eps), l.eps);
            },
            [&](const LogNormTerm& l) { return half_log(abs2(x, l.i) + abs2(x, l.j), l.eps); },
        },
        t.kind);
    total += std::holds_alternative<ConstantTerm>(t.kind) ? v : t.scale * v;
  }
  return total;
}

std::string ClosedFormPotential::describe() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  out.precision(6);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    std::visit(Overloaded{
                   [&](const ConstantTerm& c) { out << c.value; },
                   [&](const QuadraticTerm&) { out << t.scale << "*|z|^2"; },
                   [&](const HolomorphicMonomialTerm& h) {
                     out << t.scale << "*Re((" << h.coefficient.real() << "+" << h.coefficient.imag()
                         << "i)*z^[";
                     for (std::size_t j = 0; j < h.exponents.size(); ++j) {
                       out << (j ? "," : "") << h.exponents[j];
                     }
                     out << "])";
                   },
                   [&](const TrigProductTerm&) { out << t.scale << "*sum cos(2pi x_j)cos(2pi y_j)"; },
                   [&](const TrigWaveTerm& w) {
                     out << t.scale << "*cos(2pi<[";
                     for (std::size_t a = 0; a < w.wave.size(); ++a) out << (a ? "," : "") << w.wave[a];
                     out << "],x>+" << w.phase << ")";
                   },
                   [&](const LogMaxTerm& l) {
                     out << t.scale << "*M_" << l.eps << "(" << l.coef_i << "*log|z_" << l.i + 1
                         << "|, " << l.coef_j << "*log|z_" << l.j + 1 << "|)";
                   },
                   [&](const LogNormTerm& l) {
                     out << t.scale << "*log|(z_" << l.i + 1 << ",z_" << l.j + 1 << ")|_" << l.eps;
                   },
               },
               t.kind);
  }
  return out.str();
}

}  // namespace mhess
