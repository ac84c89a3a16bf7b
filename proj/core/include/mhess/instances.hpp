#pragma once

// Named periodic test potentials shared by the CLI, tests and benchmarks.

#include "mhess/potential.hpp"

namespace mhess::instances {

/// c * sum_j cos(2 pi x_j) cos(2 pi y_j). Its complex Hessian is diagonal.
ClosedFormPotential trig_product(double c = 0.02);

/// trig_product(0.02) + 0.015 cos(2 pi (x_1 + x_2)); the second term couples
/// z_1 and z_2 so the Hessian has off-diagonal entries. n >= 2.
ClosedFormPotential coupled_trig(int n);

/// Two distinct small trig potentials, both omega-m-sh for every m.
ClosedFormPotential trig_pair_first(int n);
ClosedFormPotential trig_pair_second(int n);

/// A unit-amplitude wave cos(2 pi <w, x>) along the first real axis.
ClosedFormPotential axis_wave(int n, int axis, double c);

}  // namespace mhess::instances
