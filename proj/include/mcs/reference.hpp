#pragma once

#include <functional>

#include "mcs/operators.hpp"

namespace mcs::reference {

// Closed-form minimal graph log(cos(x)/cos(y)), defined for |x|,|y| < pi/2.
double scherk(double x, double y);

// Rotationally symmetric height profile u(r) with closed-form height and
// slope, for comparison against computed surfaces.
struct RadialProfile {
  double r_lo = 0.0, r_hi = 0.0;
  double parameter = 0.0; // family parameter (neck radius / sphere radius)
  std::function<double(double)> height;
  std::function<double(double)> slope;
};

// Catenoid piece over the annulus a < r < b with u(a) = h and u(b) = 0,
// found by bisection on the neck radius. The family exists only for
// |h| <= a*acosh(b/a); beyond that NoSolution is raised.
RadialProfile catenoid_profile(double a, double b, double h);

// Spherical cap over a disk of the given radius with constant contact angle
// gamma in (0, pi/2) against the cylinder and height `pin_height` at the
// rim: u(r) = C - sqrt(Rc^2 - r^2), Rc = radius/cos(gamma).
RadialProfile spherical_cap(double gamma, double radius, double pin_height);

// Central-difference consistency check of the Frechet derivative at v in
// direction w: returns
//   || (N(v+hw) - N(v-hw)) / (2h) - L(v) w ||_inf / (1 + ||L(v) w||_inf).
double frechet_fd_check(const ProblemSpec& spec, const DerivativeSet& d,
                        const ScalarField& v, const ScalarField& w, double h);

} // namespace mcs::reference
