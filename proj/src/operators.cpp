#include "mcs/operators.hpp"

#include <cmath>
#include <sstream>

namespace mcs {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Fixed quadrature resolutions for boundary integrals. These are independent
// of the solve resolution so compatibility decisions do not drift as grids
// refine.
constexpr int kRingQuadPoints = 512;
constexpr int kEdgeQuadPoints = 129;

std::array<int, 2> corner_adjacent_components(Corner c) {
  // Component order: Left=0, Right=1, Bottom=2, Top=3.
  switch (c) {
  case Corner::BottomLeft: return {2, 0};
  case Corner::BottomRight: return {2, 1};
  case Corner::TopLeft: return {3, 0};
  case Corner::TopRight: return {3, 1};
  }
  return {0, 0};
}

struct NodalDerivatives {
  Eigen::ArrayXd ua, ub, uaa, ubb, uab;
};

NodalDerivatives nodal_derivatives(const DerivativeSet& d,
                                   const Eigen::VectorXd& v) {
  NodalDerivatives nd;
  nd.ua = (d.Da * v).array();
  nd.ub = (d.Db * v).array();
  nd.uaa = (d.Daa * v).array();
  nd.ubb = (d.Dbb * v).array();
  nd.uab = (d.Dab * v).array();
  return nd;
}

struct InteriorCoeffs {
  Eigen::ArrayXd n;                        // residual values
  Eigen::ArrayXd caa, cbb, cab, ca, cb, c0; // Frechet coefficients
};

// Interior equation and its linearization, evaluated at every node (boundary
// rows get overwritten later). Cartesian form:
//   N = (1+uy^2) uxx - 2 ux uy uxy + (1+ux^2) uyy - f(u) Q^3,
// with Q^2 = 1+|grad u|^2 and f = 0 | 2H | kappa*u.
InteriorCoeffs cartesian_interior(const PdeKind& pde, const Eigen::ArrayXd& u,
                                  const NodalDerivatives& nd,
                                  bool with_frechet) {
  const auto& ux = nd.ua;
  const auto& uy = nd.ub;
  InteriorCoeffs c;
  const Eigen::ArrayXd q2 = 1.0 + ux.square() + uy.square();
  const Eigen::ArrayXd q = q2.sqrt();

  c.n = (1.0 + uy.square()) * nd.uaa - 2.0 * ux * uy * nd.uab +
        (1.0 + ux.square()) * nd.ubb;
  if (pde.family == PdeKind::Family::Cmc)
    c.n -= pde.two_h * q2 * q;
  else if (pde.family == PdeKind::Family::Capillary)
    c.n -= pde.kappa * u * q2 * q;

  if (!with_frechet) return c;
  c.caa = 1.0 + uy.square();
  c.cbb = 1.0 + ux.square();
  c.cab = -2.0 * ux * uy;
  c.ca = 2.0 * (nd.ubb * ux - nd.uab * uy);
  c.cb = 2.0 * (nd.uaa * uy - nd.uab * ux);
  c.c0 = Eigen::ArrayXd::Zero(u.size());
  if (pde.family == PdeKind::Family::Cmc) {
    c.ca -= 3.0 * pde.two_h * q * ux;
    c.cb -= 3.0 * pde.two_h * q * uy;
  } else if (pde.family == PdeKind::Family::Capillary) {
    c.c0 = -pde.kappa * q2 * q;
    c.ca -= 3.0 * pde.kappa * u * q * ux;
    c.cb -= 3.0 * pde.kappa * u * q * uy;
  }
  return c;
}

// Polar form (scaled by r^3 relative to the divergence form so it stays
// polynomial in r):
//   N = r(r^2+ut^2) urr + r(1+ur^2) utt - 2 r ur ut urt + 2 ur ut^2
//       + r^2 (ur + ur^3) - f(u) W^3,
// with W^2 = r^2 (1+ur^2) + ut^2.
InteriorCoeffs polar_interior(const PdeKind& pde, const Eigen::ArrayXd& r,
                              const Eigen::ArrayXd& u,
                              const NodalDerivatives& nd, bool with_frechet) {
  const auto& ur = nd.ua;
  const auto& ut = nd.ub;
  InteriorCoeffs c;
  const Eigen::ArrayXd w2 = r.square() * (1.0 + ur.square()) + ut.square();
  const Eigen::ArrayXd w = w2.sqrt();

  c.n = r * (r.square() + ut.square()) * nd.uaa +
        r * (1.0 + ur.square()) * nd.ubb - 2.0 * r * ur * ut * nd.uab +
        2.0 * ur * ut.square() + r.square() * (ur + ur.cube());
  if (pde.family == PdeKind::Family::Cmc)
    c.n -= pde.two_h * w2 * w;
  else if (pde.family == PdeKind::Family::Capillary)
    c.n -= pde.kappa * u * w2 * w;

  if (!with_frechet) return c;
  c.caa = r * (r.square() + ut.square());
  c.cbb = r * (1.0 + ur.square());
  c.cab = -2.0 * r * ur * ut;
  c.ca = 2.0 * r * ur * nd.ubb - 2.0 * r * ut * nd.uab + 2.0 * ut.square() +
         r.square() * (1.0 + 3.0 * ur.square());
  c.cb = 2.0 * r * ut * nd.uaa - 2.0 * r * ur * nd.uab + 4.0 * ur * ut;
  c.c0 = Eigen::ArrayXd::Zero(u.size());
  if (pde.family == PdeKind::Family::Cmc) {
    c.ca -= 3.0 * pde.two_h * w * r.square() * ur;
    c.cb -= 3.0 * pde.two_h * w * ut;
  } else if (pde.family == PdeKind::Family::Capillary) {
    c.c0 = -pde.kappa * w2 * w;
    c.ca -= 3.0 * pde.kappa * u * w * r.square() * ur;
    c.cb -= 3.0 * pde.kappa * u * w * ut;
  }
  return c;
}

double dirichlet_corner_value(const ProblemSpec& spec, const Grid& grid,
                              Corner corner) {
  const auto adj = corner_adjacent_components(corner);
  const DomainPoint p = grid.point_at(grid.corners[int(corner)]);
  double sum = 0.0;
  int count = 0;
  for (int comp : adj) {
    if (spec.bcs[comp].type == BoundaryCondition::Type::Dirichlet) {
      sum += spec.bcs[comp].fn(p);
      ++count;
    }
  }
  return sum / count;
}

double corner_mean_cos_gamma(const ProblemSpec& spec, const Grid& grid,
                             Corner corner) {
  const auto adj = corner_adjacent_components(corner);
  const DomainPoint p = grid.point_at(grid.corners[int(corner)]);
  return 0.5 * (std::cos(spec.bcs[adj[0]].fn(p)) +
                std::cos(spec.bcs[adj[1]].fn(p)));
}

std::array<double, 2> edge_normal(int component) {
  switch (component) {
  case 0: return {-1.0, 0.0}; // left
  case 1: return {1.0, 0.0};  // right
  case 2: return {0.0, -1.0}; // bottom
  case 3: return {0.0, 1.0};  // top
  }
  return {0.0, 0.0};
}

struct Assembled {
  Eigen::VectorXd n;
  Eigen::MatrixXd l;
};

Assembled assemble(const ProblemSpec& spec, const DerivativeSet& d,
                   const ScalarField& v, bool with_frechet) {
  spec.validate();
  const Grid& grid = *d.grid;
  if (!spec.geom.same_domain(grid.geom))
    fail(ErrorCode::GeometryMismatch,
         "problem is posed on " + spec.geom.describe() +
             " but the operators discretize " + grid.geom.describe());
  if (v.grid.get() != &grid && !v.grid->geom.same_domain(grid.geom))
    fail(ErrorCode::GeometryMismatch, "field grid does not match operators");
  if (v.values.size() != grid.size())
    fail(ErrorCode::GeometryMismatch, "field size does not match operators");

  const int n_total = grid.size();
  const Eigen::ArrayXd u = v.values.array();
  const NodalDerivatives nd = nodal_derivatives(d, v.values);
  const bool polar = grid.geom.polar();

  InteriorCoeffs ic =
      polar ? polar_interior(spec.pde, grid.c1.array(), u, nd, with_frechet)
            : cartesian_interior(spec.pde, u, nd, with_frechet);

  const RowClassification rows = classify_rows(spec, grid);

  Assembled out;
  out.n = ic.n.matrix();
  if (with_frechet) {
    out.l = ic.caa.matrix().asDiagonal() * d.Daa;
    out.l += ic.cbb.matrix().asDiagonal() * d.Dbb;
    out.l += ic.cab.matrix().asDiagonal() * d.Dab;
    out.l += ic.ca.matrix().asDiagonal() * d.Da;
    out.l += ic.cb.matrix().asDiagonal() * d.Db;
    out.l += ic.c0.matrix().asDiagonal();
  }

  auto set_dirichlet_row = [&](int k, double g) {
    out.n(k) = v.values(k) - g;
    if (with_frechet) {
      out.l.row(k).setZero();
      out.l(k, k) = 1.0;
    }
  };

  // Contact-angle row with outward normal (n1,n2) in Cartesian coordinates:
  //   N_k = n1 ux + n2 uy - cg * Q,  Q = sqrt(1+|grad u|^2).
  auto set_cartesian_angle_row = [&](int k, double n1, double n2, double cg) {
    const double ux = nd.ua(k), uy = nd.ub(k);
    const double q = std::sqrt(1.0 + ux * ux + uy * uy);
    out.n(k) = n1 * ux + n2 * uy - cg * q;
    if (with_frechet) {
      out.l.row(k) = (n1 - cg * ux / q) * d.Da.row(k) +
                     (n2 - cg * uy / q) * d.Db.row(k);
    }
  };

  // Ring row, sign = +1 on the outer boundary, -1 on the inner one:
  //   N_k = sign * r ur - cg * W,  W = sqrt(r^2 (1+ur^2) + ut^2).
  auto set_ring_angle_row = [&](int k, double sign, double cg) {
    const double r = grid.c1(k);
    const double ur = nd.ua(k), ut = nd.ub(k);
    const double w = std::sqrt(r * r * (1.0 + ur * ur) + ut * ut);
    out.n(k) = sign * r * ur - cg * w;
    if (with_frechet) {
      out.l.row(k) = (sign * r - cg * r * r * ur / w) * d.Da.row(k) -
                     (cg * ut / w) * d.Db.row(k);
    }
  };

  for (int k = 0; k < n_total; ++k) {
    switch (rows.kind[k]) {
    case RowKind::Interior: break;
    case RowKind::PinRow: set_dirichlet_row(k, spec.pin->height); break;
    case RowKind::Boundary: {
      const int comp = rows.component[k];
      const BoundaryCondition& bc = spec.bcs[comp];
      const DomainPoint p = grid.point_at(k);
      if (!polar) {
        // A rectangle corner landing here is Dirichlet via an adjacent edge.
        bool is_corner = false;
        for (int ci = 0; ci < 4; ++ci) is_corner |= (grid.corners[ci] == k);
        if (is_corner) {
          Corner corner{};
          for (int ci = 0; ci < 4; ++ci)
            if (grid.corners[ci] == k) corner = Corner(ci);
          set_dirichlet_row(k, dirichlet_corner_value(spec, grid, corner));
          break;
        }
        if (bc.type == BoundaryCondition::Type::Dirichlet) {
          set_dirichlet_row(k, bc.fn(p));
        } else {
          const auto nrm = edge_normal(comp);
          set_cartesian_angle_row(k, nrm[0], nrm[1], std::cos(bc.fn(p)));
        }
      } else {
        if (bc.type == BoundaryCondition::Type::Dirichlet) {
          set_dirichlet_row(k, bc.fn(p));
        } else {
          const double sign =
              (spec.geom.kind == GeometryKind::Annulus && comp == 0) ? -1.0
                                                                     : 1.0;
          set_ring_angle_row(k, sign, std::cos(bc.fn(p)));
        }
      }
      break;
    }
    case RowKind::CornerRow: {
      Corner corner{};
      for (int ci = 0; ci < 4; ++ci)
        if (grid.corners[ci] == k) corner = Corner(ci);
      const auto nrm = corner_normal(corner);
      set_cartesian_angle_row(k, nrm[0], nrm[1],
                              corner_mean_cos_gamma(spec, grid, corner));
      break;
    }
    }
  }
  return out;
}

} // namespace

void ProblemSpec::validate() const {
  const auto comps = geom.components();
  if (bcs.size() != comps.size())
    fail(ErrorCode::InvalidArgument,
         "expected " + std::to_string(comps.size()) +
             " boundary conditions for " + geom.describe() + ", got " +
             std::to_string(bcs.size()));
  for (const auto& bc : bcs)
    if (!bc.fn)
      fail(ErrorCode::InvalidArgument, "boundary condition has no data");
  if (pde.family == PdeKind::Family::Capillary && !(pde.kappa > 0.0))
    fail(ErrorCode::InvalidArgument, "capillarity constant must be positive");
  if (pde.family == PdeKind::Family::Cmc && !std::isfinite(pde.two_h))
    fail(ErrorCode::InvalidArgument, "prescribed 2H must be finite");
  if (pin && !all_contact_angle())
    fail(ErrorCode::InvalidArgument,
         "a height pin only applies when every component prescribes a "
         "contact angle");
}

RowClassification classify_rows(const ProblemSpec& spec, const Grid& grid) {
  if (!spec.geom.same_domain(grid.geom))
    fail(ErrorCode::GeometryMismatch,
         "problem geometry does not match grid geometry");
  RowClassification rc;
  rc.kind.assign(grid.size(), RowKind::Interior);
  rc.component.assign(grid.size(), -1);

  if (grid.geom.kind == GeometryKind::Rectangle) {
    for (int comp = 0; comp < 4; ++comp)
      for (int k : grid.edges[comp]) {
        rc.kind[k] = RowKind::Boundary;
        rc.component[k] = comp;
      }
    for (int ci = 0; ci < 4; ++ci) {
      const int k = grid.corners[ci];
      const auto adj = corner_adjacent_components(Corner(ci));
      int dirichlet_comp = -1;
      for (int comp : adj)
        if (spec.bcs[comp].type == BoundaryCondition::Type::Dirichlet)
          dirichlet_comp = comp;
      if (dirichlet_comp >= 0) {
        rc.kind[k] = RowKind::Boundary;
        rc.component[k] = dirichlet_comp;
      } else {
        rc.kind[k] = RowKind::CornerRow;
      }
    }
  } else {
    const int outer_comp = spec.geom.kind == GeometryKind::Annulus ? 1 : 0;
    for (int k : grid.outer_ring) {
      rc.kind[k] = RowKind::Boundary;
      rc.component[k] = outer_comp;
    }
    for (int k : grid.inner_ring) {
      rc.kind[k] = RowKind::Boundary;
      rc.component[k] = 0;
    }
  }

  if (spec.pin) {
    rc.pin_index = default_pin_index(grid);
    rc.kind[rc.pin_index] = RowKind::PinRow;
    rc.component[rc.pin_index] = -1;
  }
  return rc;
}

int default_pin_index(const Grid& grid) {
  if (grid.geom.kind != GeometryKind::Rectangle) {
    // theta = 0 lives at angular index m/2; take the outermost ring.
    return (grid.m() / 2) * grid.nr() + (grid.nr() - 1);
  }
  const double mid = grid.geom.x.midpoint();
  int best_ix = 1;
  for (int ix = 1; ix <= grid.nx() - 2; ++ix)
    if (std::abs(grid.gx.points(ix) - mid) <
        std::abs(grid.gx.points(best_ix) - mid))
      best_ix = ix;
  return best_ix * grid.ny();
}

std::array<double, 2> corner_normal(Corner c) {
  switch (c) {
  case Corner::BottomLeft: return {-0.5, -0.5};
  case Corner::BottomRight: return {0.5, -0.5};
  case Corner::TopLeft: return {-0.5, 0.5};
  case Corner::TopRight: return {0.5, 0.5};
  }
  return {0.0, 0.0};
}

Eigen::VectorXd residual(const ProblemSpec& spec, const DerivativeSet& d,
                         const ScalarField& v) {
  return assemble(spec, d, v, false).n;
}

Eigen::MatrixXd frechet(const ProblemSpec& spec, const DerivativeSet& d,
                        const ScalarField& v) {
  return assemble(spec, d, v, true).l;
}

AssembledSystem assemble_system(const ProblemSpec& spec,
                                const DerivativeSet& d, const ScalarField& v) {
  Assembled a = assemble(spec, d, v, true);
  return {std::move(a.n), std::move(a.l)};
}

namespace {

double ring_cos_gamma_integral(const BoundaryFn& gamma, double radius) {
  double sum = 0.0;
  for (int t = 0; t < kRingQuadPoints; ++t) {
    const double theta = -kPi + 2.0 * kPi * t / kRingQuadPoints;
    sum += std::cos(gamma(DomainPoint::from_polar(radius, theta)));
  }
  return sum * radius * (2.0 * kPi / kRingQuadPoints);
}

double edge_cos_gamma_integral(const BoundaryFn& gamma, int component,
                               const Geometry& geom) {
  // Left/Right run along y, Bottom/Top along x.
  const bool along_y = component == 0 || component == 1;
  const Interval iv = along_y ? geom.y : geom.x;
  const double fixed = component == 0   ? geom.x.lo
                       : component == 1 ? geom.x.hi
                       : component == 2 ? geom.y.lo
                                        : geom.y.hi;
  const ChebGrid q = chebyshev_points(kEdgeQuadPoints, iv);
  const Eigen::VectorXd w = clenshaw_curtis_weights(kEdgeQuadPoints, iv);
  double sum = 0.0;
  for (int i = 0; i < kEdgeQuadPoints; ++i) {
    const DomainPoint p = along_y ? DomainPoint::from_xy(fixed, q.points(i))
                                  : DomainPoint::from_xy(q.points(i), fixed);
    sum += w(i) * std::cos(gamma(p));
  }
  return sum;
}

} // namespace

double boundary_cos_gamma_integral(const ProblemSpec& spec) {
  spec.validate();
  if (!spec.all_contact_angle())
    fail(ErrorCode::NotApplicable,
         "boundary cos(gamma) integral requires contact-angle data on every "
         "component");
  double total = 0.0;
  switch (spec.geom.kind) {
  case GeometryKind::Rectangle:
    for (int comp = 0; comp < 4; ++comp)
      total += edge_cos_gamma_integral(spec.bcs[comp].fn, comp, spec.geom);
    break;
  case GeometryKind::Disk:
    total = ring_cos_gamma_integral(spec.bcs[0].fn, spec.geom.outer);
    break;
  case GeometryKind::Annulus:
    total = ring_cos_gamma_integral(spec.bcs[0].fn, spec.geom.inner) +
            ring_cos_gamma_integral(spec.bcs[1].fn, spec.geom.outer);
    break;
  }
  return total;
}

double cmc_from_contact_angles(const ProblemSpec& spec) {
  return boundary_cos_gamma_integral(spec) / spec.geom.area();
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

} // namespace

CompatReport check_compatibility(const ProblemSpec& spec) {
  spec.validate();
  CompatReport rep;
  const bool all_angle = spec.all_contact_angle();
  const auto family = spec.pde.family;

  if (all_angle) {
    const double flux = boundary_cos_gamma_integral(spec);
    rep.flux = flux;

    if (family == PdeKind::Family::Minimal) {
      const double tol = 1e-8 * spec.geom.perimeter();
      if (std::abs(flux) > tol)
        rep.errors.push_back(
            "contact-angle data violates the zero-flux necessary condition: "
            "the boundary integral of cos(gamma) is " +
            fmt(flux) + " (|value| must be <= " + fmt(tol) + ")");
    }
    if (family == PdeKind::Family::Cmc) {
      const double derived = flux / spec.geom.area();
      rep.derived_two_h = derived;
      if (std::abs(derived - spec.pde.two_h) > 1e-8)
        rep.warnings.push_back(
            "prescribed 2H = " + fmt(spec.pde.two_h) +
            " is inconsistent with the contact-angle data; using the derived "
            "value 2H = " +
            fmt(derived));
    }
    if ((family == PdeKind::Family::Minimal ||
         family == PdeKind::Family::Cmc) &&
        !spec.pin) {
      rep.errors.push_back(
          "this problem determines the surface only up to a vertical shift; "
          "a height pin is required");
    }
    if ((family == PdeKind::Family::Minimal ||
         family == PdeKind::Family::Cmc) &&
        spec.geom.kind == GeometryKind::Rectangle) {
      rep.warnings.push_back(
          "contact-angle-only data on a rectangle without a gravity term is "
          "expected to be unstable; the iteration may not converge");
    }
  }

  if (family == PdeKind::Family::Cmc) {
    const double eff = rep.derived_two_h.value_or(spec.pde.two_h);
    const double bound = spec.geom.perimeter() / spec.geom.area();
    if (std::abs(eff) > bound)
      rep.warnings.push_back(
          "|2H| = " + fmt(std::abs(eff)) +
          " exceeds the perimeter/area bound " + fmt(bound) +
          "; no graph solution can exist");
  }

  if (family == PdeKind::Family::Minimal &&
      spec.geom.kind == GeometryKind::Annulus && !all_angle) {
    rep.warnings.push_back(
        "prescribed boundary heights on a non-convex domain: existence is "
        "not guaranteed and the iteration may fail");
  }

  if (spec.geom.kind == GeometryKind::Rectangle) {
    for (int ci = 0; ci < 4; ++ci) {
      const auto adj = corner_adjacent_components(Corner(ci));
      for (int comp : adj) {
        if (spec.bcs[comp].type != BoundaryCondition::Type::ContactAngle)
          continue;
        // Corner coordinates without a grid: derive from the geometry.
        const double cx = (ci == int(Corner::BottomLeft) ||
                           ci == int(Corner::TopLeft))
                              ? spec.geom.x.lo
                              : spec.geom.x.hi;
        const double cy = (ci == int(Corner::BottomLeft) ||
                           ci == int(Corner::BottomRight))
                              ? spec.geom.y.lo
                              : spec.geom.y.hi;
        const double gamma = spec.bcs[comp].fn(DomainPoint::from_xy(cx, cy));
        if (!(gamma > kPi / 4.0 && gamma < 3.0 * kPi / 4.0)) {
          rep.warnings.push_back(
              "contact angle " + fmt(gamma) + " at the " +
              to_string(Corner(ci)) +
              " corner lies outside (pi/4, 3pi/4); the solution may fail to "
              "be bounded there");
          break;
        }
      }
    }
  }

  return rep;
}

ProblemSpec apply_compatibility(const ProblemSpec& spec,
                                const CompatReport& report) {
  ProblemSpec out = spec;
  if (report.derived_two_h) out.pde.two_h = *report.derived_two_h;
  return out;
}

} // namespace mcs
