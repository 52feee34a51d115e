#include <doctest.h>

#include <cmath>

#include "mcs/reference.hpp"

using namespace mcs;
using namespace mcs::reference;

TEST_CASE("scherk: frozen values and structure") {
  CHECK(scherk(0.3, -0.2) ==
        doctest::Approx(-0.025556882873649671).epsilon(1e-14));
  CHECK(scherk(0.5, 0.5) == 0.0);
  CHECK(scherk(0.0, 0.0) == 0.0);
  // Antisymmetry under swapping the axes.
  CHECK(scherk(0.7, -0.4) == doctest::Approx(-scherk(-0.4, 0.7)).epsilon(1e-15));
}

TEST_CASE("scherk satisfies the zero-mean-curvature equation (FD check)") {
  const double h = 1e-4;
  auto u = [](double x, double y) { return scherk(x, y); };
  for (auto [x, y] : {std::pair{0.2, -0.3}, {0.0, 0.5}, {-0.6, -0.1}}) {
    const double ux = (u(x + h, y) - u(x - h, y)) / (2 * h);
    const double uy = (u(x, y + h) - u(x, y - h)) / (2 * h);
    const double uxx = (u(x + h, y) - 2 * u(x, y) + u(x - h, y)) / (h * h);
    const double uyy = (u(x, y + h) - 2 * u(x, y) + u(x, y - h)) / (h * h);
    const double uxy =
        (u(x + h, y + h) - u(x + h, y - h) - u(x - h, y + h) +
         u(x - h, y - h)) /
        (4 * h * h);
    const double m =
        (1 + uy * uy) * uxx - 2 * ux * uy * uxy + (1 + ux * ux) * uyy;
    CHECK(std::abs(m) <= 1e-6);
  }
}

TEST_CASE("catenoid profile: frozen values") {
  auto p = catenoid_profile(1.0, 2.0, 1.28792);
  CHECK(p.parameter == doctest::Approx(0.99958017431157185).epsilon(1e-12));
  CHECK(p.height(1.0) == doctest::Approx(1.28792).epsilon(1e-13));
  CHECK(p.height(2.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(p.height(1.5) == doctest::Approx(0.35430699900337465).epsilon(1e-12));

  auto q = catenoid_profile(1.0, 2.0, 0.5);
  CHECK(q.parameter == doctest::Approx(0.63482475239103798).epsilon(1e-12));
  CHECK(q.height(1.3) == doctest::Approx(0.29860468031090143).epsilon(1e-12));
  CHECK(q.slope(1.3) == doctest::Approx(-0.55958362150737485).epsilon(1e-12));
}

TEST_CASE("catenoid profile: family structure") {
  SUBCASE("negative heights mirror positive ones") {
    auto p = catenoid_profile(1.0, 2.0, -0.5);
    CHECK(p.height(1.3) ==
          doctest::Approx(-0.29860468031090143).epsilon(1e-12));
    CHECK(p.slope(1.3) == doctest::Approx(0.55958362150737485).epsilon(1e-12));
  }
  SUBCASE("zero height is the flat annulus") {
    auto p = catenoid_profile(1.0, 2.0, 0.0);
    CHECK(p.height(1.7) == 0.0);
    CHECK(p.slope(1.7) == 0.0);
  }
  SUBCASE("fold of the family") {
    // Height of the fold: a*acosh(b/a) = acosh(2) = 1.3169578969248166.
    CHECK_NOTHROW(catenoid_profile(1.0, 2.0, 1.3169));
    CHECK_THROWS_AS(catenoid_profile(1.0, 2.0, 1.317), Error);
    try {
      catenoid_profile(1.0, 2.0, 2.0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoSolution);
    }
  }
  SUBCASE("flux r u' / sqrt(1+u'^2) is constant along the profile") {
    auto p = catenoid_profile(1.0, 2.0, 0.9);
    auto flux = [&](double r) {
      const double s = p.slope(r);
      return r * s / std::sqrt(1.0 + s * s);
    };
    CHECK(flux(1.1) == doctest::Approx(flux(1.9)).epsilon(1e-12));
    CHECK(std::abs(flux(1.5)) ==
          doctest::Approx(p.parameter).epsilon(1e-12));
  }
  SUBCASE("bad radii are rejected") {
    CHECK_THROWS_AS(catenoid_profile(0.0, 2.0, 0.5), Error);
    CHECK_THROWS_AS(catenoid_profile(2.0, 1.0, 0.5), Error);
  }
}

TEST_CASE("spherical cap: frozen values and structure") {
  const double pi = 3.141592653589793238462643383279502884;
  auto p = spherical_cap(pi / 3.0, 1.0, 1.0);
  CHECK(p.parameter == doctest::Approx(2.0).epsilon(1e-15)); // R / cos(pi/3)
  CHECK(p.height(0.0) == doctest::Approx(0.73205080756887729).epsilon(1e-14));
  CHECK(p.height(0.5) == doctest::Approx(0.79555913446516885).epsilon(1e-14));
  CHECK(p.height(1.0) == doctest::Approx(1.0).epsilon(1e-14)); // pinned rim
  CHECK(p.slope(1.0) == doctest::Approx(0.57735026918962576).epsilon(1e-14));
  // Lies on a sphere of radius Rc.
  for (double r : {0.1, 0.45, 0.8}) {
    const double z = p.height(r) - (1.0 + std::sqrt(3.0));
    CHECK(z * z + r * r == doctest::Approx(4.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(spherical_cap(pi / 2.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(spherical_cap(pi / 3.0, -1.0, 1.0), Error);
}
