#include "mcs/reference.hpp"

#include <cmath>
#include <sstream>

namespace mcs::reference {

double scherk(double x, double y) {
  return std::log(std::cos(x) / std::cos(y));
}

RadialProfile catenoid_profile(double a, double b, double h) {
  if (!(a > 0.0) || !(b > a))
    fail(ErrorCode::InvalidArgument,
         "catenoid profile needs radii 0 < a < b");
  const double h_max = a * std::acosh(b / a);
  if (std::abs(h) > h_max) {
    std::ostringstream os;
    os << "no catenoid over the annulus matches inner height " << h
       << "; the family folds at |h| = " << h_max;
    fail(ErrorCode::NoSolution, os.str());
  }

  RadialProfile p;
  p.r_lo = a;
  p.r_hi = b;
  if (h == 0.0) {
    p.parameter = 0.0;
    p.height = [](double) { return 0.0; };
    p.slope = [](double) { return 0.0; };
    return p;
  }

  const double target = std::abs(h);
  const double sign = h > 0.0 ? 1.0 : -1.0;
  // Inner height c*(acosh(b/c) - acosh(a/c)) grows monotonically in the neck
  // radius c on (0, a], from 0 to h_max, so bisection is safe.
  auto inner_height = [a, b](double c) {
    return c * (std::acosh(b / c) - std::acosh(a / c));
  };
  double lo = 1e-300, hi = a;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inner_height(mid) < target ? lo : hi) = mid;
  }
  const double c = 0.5 * (lo + hi);

  p.parameter = c;
  p.height = [b, c, sign](double r) {
    return sign * c * (std::acosh(b / c) - std::acosh(r / c));
  };
  p.slope = [c, sign](double r) {
    return -sign * c / std::sqrt(r * r - c * c);
  };
  return p;
}

RadialProfile spherical_cap(double gamma, double radius, double pin_height) {
  if (!(radius > 0.0))
    fail(ErrorCode::InvalidArgument, "cap needs a positive disk radius");
  if (!(gamma > 0.0) || !(gamma < 1.5707963267948966))
    fail(ErrorCode::InvalidArgument,
         "cap contact angle must lie in (0, pi/2)");
  const double rc = radius / std::cos(gamma);
  const double c = pin_height + std::sqrt(rc * rc - radius * radius);
  RadialProfile p;
  p.r_lo = 0.0;
  p.r_hi = radius;
  p.parameter = rc;
  p.height = [c, rc](double r) { return c - std::sqrt(rc * rc - r * r); };
  p.slope = [rc](double r) { return r / std::sqrt(rc * rc - r * r); };
  return p;
}

double frechet_fd_check(const ProblemSpec& spec, const DerivativeSet& d,
                        const ScalarField& v, const ScalarField& w, double h) {
  if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "step h must be positive");
  ScalarField plus = v, minus = v;
  plus.values += h * w.values;
  minus.values -= h * w.values;
  const Eigen::VectorXd fd =
      (residual(spec, d, plus) - residual(spec, d, minus)) / (2.0 * h);
  const Eigen::VectorXd lw = frechet(spec, d, v) * w.values;
  return (fd - lw).cwiseAbs().maxCoeff() /
         (1.0 + lw.cwiseAbs().maxCoeff());
}

} // namespace mcs::reference
