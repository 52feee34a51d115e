#include <doctest.h>

#include <cmath>
#include <random>

#include "mcs/operators.hpp"
#include "mcs/reference.hpp"
#include "testing.hpp"

using namespace mcs;
using mcs::testing::random_smooth_field;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

ProblemSpec dirichlet_spec(Geometry geom, PdeKind pde, BoundaryFn g) {
  ProblemSpec spec;
  spec.geom = geom;
  spec.pde = pde;
  for (size_t i = 0; i < geom.components().size(); ++i)
    spec.bcs.push_back(BoundaryCondition::dirichlet(g));
  return spec;
}

} // namespace

TEST_CASE("row classification: rectangle") {
  auto d = assemble_rectangle(7, 7, {-1, 1}, {-1, 1});
  SUBCASE("all-Dirichlet marks corners as boundary rows") {
    auto spec = dirichlet_spec(Geometry::square(-1, 1), PdeKind::minimal(),
                               [](const DomainPoint&) { return 0.0; });
    auto rc = classify_rows(spec, *d.grid);
    int interior = 0, boundary = 0;
    for (auto k : rc.kind) {
      interior += k == RowKind::Interior;
      boundary += k == RowKind::Boundary;
    }
    CHECK(interior == 25);
    CHECK(boundary == 24);
    for (int ci = 0; ci < 4; ++ci)
      CHECK(rc.kind[d.grid->corners[ci]] == RowKind::Boundary);
  }
  SUBCASE("all-contact-angle marks corner rows and the pin") {
    ProblemSpec spec;
    spec.geom = Geometry::square(-1, 1);
    spec.pde = PdeKind::capillary(1.0);
    for (int i = 0; i < 4; ++i)
      spec.bcs.push_back(BoundaryCondition::contact_angle(kPi / 3));
    auto rc = classify_rows(spec, *d.grid);
    for (int ci = 0; ci < 4; ++ci)
      CHECK(rc.kind[d.grid->corners[ci]] == RowKind::CornerRow);
    CHECK(rc.pin_index == -1);

    spec.pde = PdeKind::minimal();
    spec.pin = Pin{0.0};
    rc = classify_rows(spec, *d.grid);
    CHECK(rc.pin_index == 3 * 7); // bottom edge, x = 0
    CHECK(rc.kind[3 * 7] == RowKind::PinRow);
  }
  SUBCASE("mixed data: corners follow the Dirichlet edge") {
    ProblemSpec spec;
    spec.geom = Geometry::square(-1, 1);
    spec.pde = PdeKind::capillary(1.0);
    spec.bcs = {BoundaryCondition::contact_angle(kPi / 2),  // left
                BoundaryCondition::contact_angle(kPi / 2),  // right
                BoundaryCondition::dirichlet(0.25),         // bottom
                BoundaryCondition::contact_angle(kPi / 2)}; // top
    auto rc = classify_rows(spec, *d.grid);
    CHECK(rc.kind[d.grid->corners[int(Corner::BottomLeft)]] ==
          RowKind::Boundary);
    CHECK(rc.component[d.grid->corners[int(Corner::BottomLeft)]] == 2);
    CHECK(rc.kind[d.grid->corners[int(Corner::TopLeft)]] ==
          RowKind::CornerRow);
  }
}

TEST_CASE("row classification: polar") {
  auto d = assemble_annulus(6, 8, 1.0, 2.0);
  ProblemSpec spec;
  spec.geom = Geometry::annulus(1.0, 2.0);
  spec.pde = PdeKind::minimal();
  spec.bcs = {BoundaryCondition::contact_angle(kPi / 2),
              BoundaryCondition::dirichlet(0.0)};
  auto rc = classify_rows(spec, *d.grid);
  for (int k : d.grid->inner_ring) {
    CHECK(rc.kind[k] == RowKind::Boundary);
    CHECK(rc.component[k] == 0);
  }
  for (int k : d.grid->outer_ring) CHECK(rc.component[k] == 1);

  auto dd = assemble_disk(8, 8, 1.0);
  CHECK(default_pin_index(*dd.grid) == 4 * 4 + 3); // theta = 0, outermost
  CHECK(dd.grid->point_at(default_pin_index(*dd.grid)).theta == 0.0);
  CHECK(dd.grid->point_at(default_pin_index(*dd.grid)).r == 1.0);
}

TEST_CASE("corner normals have half-magnitude components") {
  CHECK(corner_normal(Corner::BottomLeft) == std::array<double, 2>{-0.5, -0.5});
  CHECK(corner_normal(Corner::BottomRight) == std::array<double, 2>{0.5, -0.5});
  CHECK(corner_normal(Corner::TopLeft) == std::array<double, 2>{-0.5, 0.5});
  CHECK(corner_normal(Corner::TopRight) == std::array<double, 2>{0.5, 0.5});
}

TEST_CASE("problem validation") {
  ProblemSpec spec;
  spec.geom = Geometry::disk(1.0);
  spec.pde = PdeKind::minimal();
  CHECK_THROWS_AS(spec.validate(), Error); // no boundary conditions
  spec.bcs = {BoundaryCondition::dirichlet(0.0)};
  CHECK_NOTHROW(spec.validate());
  spec.pin = Pin{1.0};
  CHECK_THROWS_AS(spec.validate(), Error); // pin with Dirichlet data
  spec.pin.reset();
  spec.pde = PdeKind::capillary(-1.0);
  CHECK_THROWS_AS(spec.validate(), Error); // kappa <= 0
}

TEST_CASE("residual vanishes on closed-form solutions") {
  SUBCASE("scherk graph / minimal / rectangle") {
    auto d = assemble_rectangle(24, 24, {-0.8, 0.8}, {-0.8, 0.8});
    auto spec =
        dirichlet_spec(d.grid->geom, PdeKind::minimal(),
                       [](const DomainPoint& p) {
                         return mcs::reference::scherk(p.x, p.y);
                       });
    auto v = sample_field(d.grid, [](const DomainPoint& p) {
      return mcs::reference::scherk(p.x, p.y);
    });
    const Eigen::VectorXd r = residual(spec, d, v);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("hemisphere / CMC / rectangle") {
    // u = sqrt(4 - x^2 - y^2) solves the prescribed-curvature equation with
    // 2H = -1 (the graph curves away from the upward normal).
    auto d = assemble_rectangle(28, 28, {-1, 1}, {-1, 1});
    auto u = [](const DomainPoint& p) {
      return std::sqrt(4.0 - p.x * p.x - p.y * p.y);
    };
    auto spec = dirichlet_spec(d.grid->geom, PdeKind::cmc(-1.0), u);
    auto v = sample_field(d.grid, u);
    const Eigen::VectorXd r = residual(spec, d, v);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-9);
  }
  SUBCASE("catenoid / minimal / annulus, Dirichlet") {
    // Shallow catenoid: the profile's branch point r = c sits well outside
    // the annulus, so a modest radial grid resolves it to rounding level.
    auto profile = mcs::reference::catenoid_profile(1.0, 2.0, 0.5);
    auto d = assemble_annulus(32, 16, 1.0, 2.0);
    ProblemSpec spec;
    spec.geom = d.grid->geom;
    spec.pde = PdeKind::minimal();
    spec.bcs = {BoundaryCondition::dirichlet(0.5),
                BoundaryCondition::dirichlet(0.0)};
    auto v = sample_field(
        d.grid, [&](const DomainPoint& p) { return profile.height(p.r); });
    const Eigen::VectorXd r = residual(spec, d, v);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("spherical cap / CMC + contact angle + pin / disk") {
    auto cap = mcs::reference::spherical_cap(kPi / 3.0, 1.0, 1.0);
    auto d = assemble_disk(24, 16, 1.0);
    ProblemSpec spec;
    spec.geom = d.grid->geom;
    spec.pde = PdeKind::cmc(1.0); // 2H = 2 cos(gamma) / R = 1
    spec.bcs = {BoundaryCondition::contact_angle(kPi / 3.0)};
    spec.pin = Pin{1.0};
    auto v = sample_field(d.grid,
                          [&](const DomainPoint& p) { return cap.height(p.r); });
    const Eigen::VectorXd r = residual(spec, d, v);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("pde families differ by the prescribed right-hand side") {
  auto d = assemble_rectangle(10, 10, {-1, 1}, {0, 2});
  std::mt19937 rng(11);
  auto v = random_smooth_field(d.grid, rng);
  auto g = [](const DomainPoint&) { return 0.0; };
  auto base = dirichlet_spec(d.grid->geom, PdeKind::minimal(), g);
  auto cmc = dirichlet_spec(d.grid->geom, PdeKind::cmc(0.7), g);
  auto cap = dirichlet_spec(d.grid->geom, PdeKind::capillary(1.3), g);

  const Eigen::ArrayXd ux = (d.Da * v.values).array();
  const Eigen::ArrayXd uy = (d.Db * v.values).array();
  const Eigen::ArrayXd q3 =
      (1.0 + ux.square() + uy.square()).pow(1.5);

  const Eigen::VectorXd r0 = residual(base, d, v);
  const Eigen::VectorXd r1 = residual(cmc, d, v);
  const Eigen::VectorXd r2 = residual(cap, d, v);
  const RowClassification rc = classify_rows(base, *d.grid);
  for (int k = 0; k < d.grid->size(); ++k) {
    if (rc.kind[k] != RowKind::Interior) {
      CHECK(r0(k) == r1(k));
      CHECK(r0(k) == r2(k));
    } else {
      CHECK(r1(k) - r0(k) == doctest::Approx(-0.7 * q3(k)).epsilon(1e-12));
      CHECK(r2(k) - r0(k) ==
            doctest::Approx(-1.3 * v.values(k) * q3(k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("boundary row values") {
  SUBCASE("dirichlet rows are u - g with a unit Frechet row") {
    auto d = assemble_annulus(8, 10, 1.0, 2.0);
    ProblemSpec spec;
    spec.geom = d.grid->geom;
    spec.pde = PdeKind::minimal();
    spec.bcs = {BoundaryCondition::dirichlet(
                    [](const DomainPoint& p) { return std::sin(p.theta); }),
                BoundaryCondition::dirichlet(0.25)};
    std::mt19937 rng(3);
    auto v = random_smooth_field(d.grid, rng);
    const Eigen::VectorXd r = residual(spec, d, v);
    const Eigen::MatrixXd l = frechet(spec, d, v);
    for (int k : d.grid->inner_ring) {
      const auto p = d.grid->point_at(k);
      CHECK(r(k) == doctest::Approx(v.values(k) - std::sin(p.theta))
                        .epsilon(1e-14));
      Eigen::VectorXd row = l.row(k);
      CHECK(row(k) == 1.0);
      row(k) = 0.0;
      CHECK(row.cwiseAbs().maxCoeff() == 0.0);
    }
    for (int k : d.grid->outer_ring)
      CHECK(r(k) == doctest::Approx(v.values(k) - 0.25).epsilon(1e-14));
  }
  SUBCASE("rectangle contact-angle rows use the outward normal") {
    auto d = assemble_rectangle(8, 8, {-1, 1}, {-1, 1});
    ProblemSpec spec;
    spec.geom = d.grid->geom;
    spec.pde = PdeKind::capillary(1.0);
    const double gl = 1.2, gr = 1.3, gb = 1.4, gt = 1.5;
    spec.bcs = {BoundaryCondition::contact_angle(gl),
                BoundaryCondition::contact_angle(gr),
                BoundaryCondition::contact_angle(gb),
                BoundaryCondition::contact_angle(gt)};
    // Linear field: gradient is (0.3, 0.4) everywhere, exactly.
    auto v = sample_field(d.grid, [](const DomainPoint& p) {
      return 0.3 * p.x + 0.4 * p.y;
    });
    const Eigen::VectorXd r = residual(spec, d, v);
    const double q = std::sqrt(1.0 + 0.09 + 0.16);
    CHECK(r(d.grid->edges[0][2]) ==
          doctest::Approx(-0.3 - std::cos(gl) * q).epsilon(1e-12));
    CHECK(r(d.grid->edges[1][2]) ==
          doctest::Approx(0.3 - std::cos(gr) * q).epsilon(1e-12));
    CHECK(r(d.grid->edges[2][2]) ==
          doctest::Approx(-0.4 - std::cos(gb) * q).epsilon(1e-12));
    CHECK(r(d.grid->edges[3][2]) ==
          doctest::Approx(0.4 - std::cos(gt) * q).epsilon(1e-12));
    // Corner: half-strength normal, cosines averaged over adjacent edges.
    const int tr = d.grid->corners[int(Corner::TopRight)];
    CHECK(r(tr) == doctest::Approx(0.5 * 0.3 + 0.5 * 0.4 -
                                   0.5 * (std::cos(gt) + std::cos(gr)) * q)
                       .epsilon(1e-12));
  }
  SUBCASE("ring contact-angle rows carry the radial sign") {
    auto d = assemble_annulus(8, 10, 1.0, 2.0);
    ProblemSpec spec;
    spec.geom = d.grid->geom;
    spec.pde = PdeKind::capillary(1.0);
    const double ga = 0.9, gb = 1.1;
    spec.bcs = {BoundaryCondition::contact_angle(ga),
                BoundaryCondition::contact_angle(gb)};
    auto v = sample_field(d.grid, [](const DomainPoint& p) { return p.r; });
    const Eigen::VectorXd r = residual(spec, d, v);
    // u_r = 1, u_theta = 0, W = r*sqrt(2).
    CHECK(r(d.grid->inner_ring[0]) ==
          doctest::Approx(-1.0 - std::cos(ga) * std::sqrt(2.0))
              .epsilon(1e-11));
    CHECK(r(d.grid->outer_ring[0]) ==
          doctest::Approx(2.0 - std::cos(gb) * 2.0 * std::sqrt(2.0))
              .epsilon(1e-11));
  }
  SUBCASE("pin row prescribes the height") {
    auto d = assemble_disk(8, 8, 1.0);
    ProblemSpec spec;
    spec.geom = d.grid->geom;
    spec.pde = PdeKind::capillary(1.0);
    spec.bcs = {BoundaryCondition::contact_angle(kPi / 3)};
    spec.pin = Pin{0.75};
    auto v = constant_field(d.grid, 0.2);
    const Eigen::VectorXd r = residual(spec, d, v);
    const int k = default_pin_index(*d.grid);
    CHECK(r(k) == doctest::Approx(0.2 - 0.75).epsilon(1e-15));
    const Eigen::MatrixXd l = frechet(spec, d, v);
    CHECK(l(k, k) == 1.0);
    CHECK(l.row(k).cwiseAbs().sum() == 1.0);
  }
}

TEST_CASE("frechet derivative is consistent with the residual") {
  struct Case {
    const char* name;
    ProblemSpec spec;
    int n, m;
  };
  std::vector<Case> cases;

  {
    Case c{"rect minimal dirichlet", {}, 10, 0};
    c.spec = dirichlet_spec(Geometry::rectangle({-1, 1}, {0, 2}),
                            PdeKind::minimal(), [](const DomainPoint& p) {
                              return 0.1 * p.x - 0.2 * p.y;
                            });
    cases.push_back(c);
  }
  {
    Case c{"rect cmc dirichlet", {}, 10, 0};
    c.spec = dirichlet_spec(Geometry::square(-1, 1), PdeKind::cmc(0.3),
                            [](const DomainPoint&) { return 0.0; });
    cases.push_back(c);
  }
  {
    Case c{"rect capillary all-angle", {}, 10, 0};
    c.spec.geom = Geometry::square(-1, 1);
    c.spec.pde = PdeKind::capillary(1.2);
    for (int i = 0; i < 4; ++i)
      c.spec.bcs.push_back(BoundaryCondition::contact_angle(
          [](const DomainPoint& p) { return kPi / 2 + 0.1 * p.x * p.y; }));
    cases.push_back(c);
  }
  {
    Case c{"rect minimal all-angle pinned", {}, 10, 0};
    c.spec.geom = Geometry::square(-1, 1);
    c.spec.pde = PdeKind::minimal();
    for (int i = 0; i < 4; ++i)
      c.spec.bcs.push_back(BoundaryCondition::contact_angle(kPi / 2));
    c.spec.pin = Pin{1.0};
    cases.push_back(c);
  }
  {
    Case c{"disk minimal dirichlet", {}, 10, 12};
    c.spec = dirichlet_spec(Geometry::disk(1.0), PdeKind::minimal(),
                            [](const DomainPoint& p) {
                              return 0.1 * std::sin(2 * p.theta);
                            });
    cases.push_back(c);
  }
  {
    Case c{"disk cmc all-angle pinned", {}, 10, 12};
    c.spec.geom = Geometry::disk(1.0);
    c.spec.pde = PdeKind::cmc(0.4);
    c.spec.bcs = {BoundaryCondition::contact_angle(
        [](const DomainPoint& p) { return kPi / 2 + 0.05 * std::cos(p.theta); })};
    c.spec.pin = Pin{1.0};
    cases.push_back(c);
  }
  {
    Case c{"disk capillary all-angle", {}, 10, 12};
    c.spec.geom = Geometry::disk(1.5);
    c.spec.pde = PdeKind::capillary(1.0);
    c.spec.bcs = {BoundaryCondition::contact_angle(
        [](const DomainPoint& p) { return kPi / 3 + 0.2 * std::sin(6 * p.theta); })};
    cases.push_back(c);
  }
  {
    Case c{"annulus minimal mixed", {}, 8, 12};
    c.spec.geom = Geometry::annulus(1.0, 2.0);
    c.spec.pde = PdeKind::minimal();
    c.spec.bcs = {BoundaryCondition::contact_angle(
                      [](const DomainPoint& p) {
                        return kPi / 3 + 0.75 * std::sin(6 * p.theta);
                      }),
                  BoundaryCondition::dirichlet(0.5)};
    cases.push_back(c);
  }
  {
    Case c{"annulus cmc mixed", {}, 8, 12};
    c.spec.geom = Geometry::annulus(1.0, 2.0);
    c.spec.pde = PdeKind::cmc(-0.85);
    c.spec.bcs = {BoundaryCondition::contact_angle(kPi / 2 + 0.2),
                  BoundaryCondition::dirichlet(
                      [](const DomainPoint& p) {
                        return 0.5 - 0.1 * std::pow(std::cos(p.theta), 2);
                      })};
    cases.push_back(c);
  }
  {
    Case c{"annulus capillary dirichlet", {}, 8, 12};
    c.spec = dirichlet_spec(Geometry::annulus(0.5, 1.5),
                            PdeKind::capillary(2.0), [](const DomainPoint& p) {
                              return 0.5 + 0.1 * std::sin(p.theta);
                            });
    cases.push_back(c);
  }

  std::mt19937 rng(2024);
  for (const auto& c : cases) {
    CAPTURE(c.name);
    auto d = assemble(c.spec.geom, c.n, c.m);
    for (int trial = 0; trial < 3; ++trial) {
      auto v = random_smooth_field(d.grid, rng);
      auto w = random_smooth_field(d.grid, rng);
      const double err =
          mcs::reference::frechet_fd_check(c.spec, d, v, w, 1e-6);
      CHECK(err <= 1e-6);
    }
  }
}

TEST_CASE("assemble_system matches the separate entry points") {
  auto d = assemble_disk(8, 8, 1.0);
  auto spec = dirichlet_spec(Geometry::disk(1.0), PdeKind::cmc(0.5),
                             [](const DomainPoint&) { return 0.1; });
  std::mt19937 rng(5);
  auto v = random_smooth_field(d.grid, rng);
  auto sys = assemble_system(spec, d, v);
  CHECK((sys.residual - residual(spec, d, v)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sys.frechet - frechet(spec, d, v)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("operators reject mismatched fields and geometries") {
  auto d = assemble_rectangle(6, 6, {-1, 1}, {-1, 1});
  auto other = assemble_rectangle(6, 6, {-1, 1}, {0, 1});
  auto spec = dirichlet_spec(d.grid->geom, PdeKind::minimal(),
                             [](const DomainPoint&) { return 0.0; });
  auto v = constant_field(other.grid, 0.0);
  CHECK_THROWS_AS(residual(spec, d, v), Error);
  auto spec2 = dirichlet_spec(other.grid->geom, PdeKind::minimal(),
                              [](const DomainPoint&) { return 0.0; });
  auto v2 = constant_field(d.grid, 0.0);
  CHECK_THROWS_AS(residual(spec2, d, v2), Error);
}

TEST_CASE("boundary cos(gamma) integrals") {
  SUBCASE("constant angles have closed forms") {
    ProblemSpec disk;
    disk.geom = Geometry::disk(1.0);
    disk.pde = PdeKind::minimal();
    disk.bcs = {BoundaryCondition::contact_angle(kPi / 3)};
    disk.pin = Pin{1.0};
    CHECK(boundary_cos_gamma_integral(disk) ==
          doctest::Approx(kPi).epsilon(1e-13));

    ProblemSpec ann;
    ann.geom = Geometry::annulus(1.0, 2.0);
    ann.pde = PdeKind::minimal();
    ann.bcs = {BoundaryCondition::contact_angle(kPi / 2),
               BoundaryCondition::contact_angle(kPi / 3)};
    ann.pin = Pin{1.0};
    CHECK(boundary_cos_gamma_integral(ann) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-13));

    ProblemSpec rect;
    rect.geom = Geometry::square(0.0, 1.0);
    rect.pde = PdeKind::capillary(1.0);
    for (int i = 0; i < 4; ++i)
      rect.bcs.push_back(BoundaryCondition::contact_angle(kPi / 3));
    CHECK(boundary_cos_gamma_integral(rect) ==
          doctest::Approx(2.0).epsilon(1e-13));
  }
  SUBCASE("angle-dependent data against an independent quadrature") {
    auto gamma = [](const DomainPoint& p) {
      return kPi / 2 - 0.1 + 0.2 * std::sin(4 * p.theta) * std::cos(p.theta);
    };
    ProblemSpec disk;
    disk.geom = Geometry::disk(1.0);
    disk.pde = PdeKind::cmc(0.2);
    disk.bcs = {BoundaryCondition::contact_angle(gamma)};
    disk.pin = Pin{1.0};
    double ref = 0.0;
    const int nq = 4096;
    for (int t = 0; t < nq; ++t) {
      const double theta = -kPi + 2 * kPi * t / nq;
      ref += std::cos(gamma(DomainPoint::from_polar(1.0, theta)));
    }
    ref *= 2 * kPi / nq;
    CHECK(boundary_cos_gamma_integral(disk) ==
          doctest::Approx(ref).epsilon(1e-12));
    CHECK(cmc_from_contact_angles(disk) ==
          doctest::Approx(ref / kPi).epsilon(1e-12));
  }
  SUBCASE("odd data integrates to zero") {
    ProblemSpec disk;
    disk.geom = Geometry::disk(1.0);
    disk.pde = PdeKind::minimal();
    disk.bcs = {BoundaryCondition::contact_angle([](const DomainPoint& p) {
      return kPi / 2 + 0.3 * std::sin(2 * p.theta);
    })};
    disk.pin = Pin{1.0};
    CHECK(std::abs(boundary_cos_gamma_integral(disk)) <= 1e-14);
  }
  SUBCASE("requires contact-angle data everywhere") {
    ProblemSpec mixed;
    mixed.geom = Geometry::annulus(1.0, 2.0);
    mixed.pde = PdeKind::minimal();
    mixed.bcs = {BoundaryCondition::contact_angle(kPi / 2),
                 BoundaryCondition::dirichlet(0.0)};
    try {
      boundary_cos_gamma_integral(mixed);
      FAIL("expected NotApplicable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotApplicable);
    }
  }
}

TEST_CASE("compatibility screening") {
  SUBCASE("minimal + nonzero flux is rejected with the flux value") {
    ProblemSpec spec;
    spec.geom = Geometry::disk(1.0);
    spec.pde = PdeKind::minimal();
    spec.bcs = {BoundaryCondition::contact_angle(kPi / 3)};
    spec.pin = Pin{1.0};
    auto rep = check_compatibility(spec);
    CHECK(!rep.ok());
    REQUIRE(rep.flux.has_value());
    CHECK(*rep.flux == doctest::Approx(kPi).epsilon(1e-12));
    bool mentions_flux = false;
    for (const auto& e : rep.errors)
      mentions_flux |= e.find("zero-flux") != std::string::npos;
    CHECK(mentions_flux);
  }
  SUBCASE("minimal + zero flux + pin passes") {
    ProblemSpec spec;
    spec.geom = Geometry::disk(1.0);
    spec.pde = PdeKind::minimal();
    spec.bcs = {BoundaryCondition::contact_angle([](const DomainPoint& p) {
      return kPi / 2 + std::sin(16 * p.theta) * std::cos(p.theta) +
             0.2 * std::cos(3 * p.theta) + 0.05 * std::cos(p.theta);
    })};
    spec.pin = Pin{1.0};
    auto rep = check_compatibility(spec);
    CHECK(rep.ok());
    CHECK(std::abs(*rep.flux) <= 1e-10);

    spec.pin.reset();
    rep = check_compatibility(spec);
    CHECK(!rep.ok()); // shift invariance requires a pin
  }
  SUBCASE("cmc + contact angles replaces a mismatched 2H") {
    ProblemSpec spec;
    spec.geom = Geometry::disk(1.0);
    spec.pde = PdeKind::cmc(1.0 + 1e-3);
    spec.bcs = {BoundaryCondition::contact_angle(kPi / 3)};
    spec.pin = Pin{1.0};
    auto rep = check_compatibility(spec);
    CHECK(rep.ok());
    REQUIRE(rep.derived_two_h.has_value());
    CHECK(*rep.derived_two_h == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(!rep.warnings.empty());
    auto eff = apply_compatibility(spec, rep);
    CHECK(eff.pde.two_h == *rep.derived_two_h);

    // A consistent 2H produces no mismatch warning.
    spec.pde = PdeKind::cmc(*rep.derived_two_h);
    rep = check_compatibility(spec);
    for (const auto& w : rep.warnings)
      CHECK(w.find("inconsistent") == std::string::npos);
  }
  SUBCASE("curvature beyond the perimeter/area bound warns") {
    auto spec = dirichlet_spec(Geometry::disk(1.0), PdeKind::cmc(2.5),
                               [](const DomainPoint&) { return 0.0; });
    auto rep = check_compatibility(spec);
    bool warned = false;
    for (const auto& w : rep.warnings)
      warned |= w.find("perimeter/area") != std::string::npos;
    CHECK(warned);
  }
  SUBCASE("minimal Dirichlet on an annulus warns about convexity") {
    auto spec = dirichlet_spec(Geometry::annulus(1.0, 2.0),
                               PdeKind::minimal(),
                               [](const DomainPoint&) { return 0.0; });
    auto rep = check_compatibility(spec);
    CHECK(rep.ok());
    bool warned = false;
    for (const auto& w : rep.warnings)
      warned |= w.find("convex") != std::string::npos;
    CHECK(warned);
  }
  SUBCASE("rectangle corner angles outside (pi/4, 3pi/4) warn") {
    ProblemSpec spec;
    spec.geom = Geometry::square(-1, 1);
    spec.pde = PdeKind::capillary(1.0);
    for (int i = 0; i < 4; ++i)
      spec.bcs.push_back(BoundaryCondition::contact_angle(kPi / 4 - 0.05));
    auto rep = check_compatibility(spec);
    bool warned = false;
    for (const auto& w : rep.warnings)
      warned |= w.find("corner") != std::string::npos;
    CHECK(warned);

    ProblemSpec ok = spec;
    ok.bcs.clear();
    for (int i = 0; i < 4; ++i)
      ok.bcs.push_back(BoundaryCondition::contact_angle(kPi / 4 + 0.05));
    rep = check_compatibility(ok);
    for (const auto& w : rep.warnings)
      CHECK(w.find("corner") == std::string::npos);
  }
  SUBCASE("rectangle minimal/CMC with only contact angles warns unstable") {
    ProblemSpec spec;
    spec.geom = Geometry::square(-1, 1);
    spec.pde = PdeKind::minimal();
    for (int i = 0; i < 4; ++i)
      spec.bcs.push_back(BoundaryCondition::contact_angle(kPi / 2));
    spec.pin = Pin{1.0};
    auto rep = check_compatibility(spec);
    CHECK(rep.ok());
    bool warned = false;
    for (const auto& w : rep.warnings)
      warned |= w.find("unstable") != std::string::npos;
    CHECK(warned);
  }
}
