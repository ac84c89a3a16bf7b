#include "mhess/instances.hpp"

#include <stdexcept>
#include <vector>

namespace mhess::instances {

namespace {

std::vector<int> wave(int n, std::initializer_list<std::pair<int, int>> entries) {
  std::vector<int> w(static_cast<std::size_t>(2 * n), 0);
  for (auto [axis, k] : entries) {
    if (axis >= 2 * n) throw std::invalid_argument("instance needs more dimensions");
    w[static_cast<std::size_t>(axis)] = k;
  }
  return w;
}

}  // namespace

ClosedFormPotential trig_product(double c) { return ClosedFormPotential::trig_product(c); }

ClosedFormPotential coupled_trig(int n) {
  if (n < 2) throw std::invalid_argument("coupled_trig needs n >= 2");
  return trig_product(0.02) + ClosedFormPotential::trig_wave(0.015, wave(n, {{0, 1}, {2, 1}}));
}

ClosedFormPotential trig_pair_first(int n) {
  (void)n;
  return trig_product(0.02);
}

ClosedFormPotential trig_pair_second(int n) {
  const int second = n >= 2 ? 3 : 1;
  return ClosedFormPotential::trig_wave(0.015, wave(n, {{0, 1}, {second, 1}}), 0.3) +
         ClosedFormPotential::trig_wave(0.01, wave(n, {{1, 2}}));
}

ClosedFormPotential axis_wave(int n, int axis, double c) {
  return ClosedFormPotential::trig_wave(c, wave(n, {{axis, 1}}));
}

}  // namespace mhess::instances
