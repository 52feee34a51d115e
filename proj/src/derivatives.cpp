#include "mcs/derivatives.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mcs {

namespace {

void fill_polar_coords(Grid& g) {
  const int nr = g.nr();
  const int m = g.m();
  g.c1.resize(nr * m);
  g.c2.resize(nr * m);
  for (int it = 0; it < m; ++it)
    for (int ir = 0; ir < nr; ++ir) {
      const int k = it * nr + ir;
      g.c1(k) = g.radii(ir);
      g.c2(k) = g.gt.points(it);
    }
}

std::shared_ptr<Grid> make_rectangle_grid(int nx, int ny, Interval x,
                                          Interval y) {
  auto g = std::make_shared<Grid>();
  g->geom = Geometry::rectangle(x, y);
  g->gx = chebyshev_points(nx, x);
  g->gy = chebyshev_points(ny, y);
  g->c1.resize(nx * ny);
  g->c2.resize(nx * ny);
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy) {
      const int k = ix * ny + iy;
      g->c1(k) = g->gx.points(ix);
      g->c2(k) = g->gy.points(iy);
    }
  auto& e = g->edges;
  for (int iy = 1; iy < ny - 1; ++iy) e[0].push_back(0 * ny + iy);
  for (int iy = 1; iy < ny - 1; ++iy) e[1].push_back((nx - 1) * ny + iy);
  for (int ix = 1; ix < nx - 1; ++ix) e[2].push_back(ix * ny + 0);
  for (int ix = 1; ix < nx - 1; ++ix) e[3].push_back(ix * ny + (ny - 1));
  g->corners[static_cast<int>(Corner::BottomLeft)] = 0;
  g->corners[static_cast<int>(Corner::BottomRight)] = (nx - 1) * ny;
  g->corners[static_cast<int>(Corner::TopLeft)] = ny - 1;
  g->corners[static_cast<int>(Corner::TopRight)] = (nx - 1) * ny + (ny - 1);
  return g;
}

std::shared_ptr<Grid> make_annulus_grid(int n, int m, double a, double b) {
  auto g = std::make_shared<Grid>();
  g->geom = Geometry::annulus(a, b);
  g->gr = chebyshev_points(n, {a, b});
  g->gt = fourier_points(m);
  g->radii = g->gr.points;
  fill_polar_coords(*g);
  for (int it = 0; it < m; ++it) {
    g->inner_ring.push_back(it * n + 0);
    g->outer_ring.push_back(it * n + (n - 1));
  }
  return g;
}

std::shared_ptr<Grid> make_disk_grid(int n, int m, double radius) {
  if (n % 2 != 0)
    fail(ErrorCode::InvalidArgument,
         "disk radial point count must be even, got " + std::to_string(n));
  auto g = std::make_shared<Grid>();
  g->geom = Geometry::disk(radius);
  g->gr = chebyshev_points(n, {-radius, radius});
  g->gt = fourier_points(m);
  g->radii = g->gr.points.tail(n / 2);
  fill_polar_coords(*g);
  const int nr = n / 2;
  for (int it = 0; it < m; ++it)
    g->outer_ring.push_back(it * nr + (nr - 1));
  return g;
}

Eigen::MatrixXd identity(int n) { return Eigen::MatrixXd::Identity(n, n); }

// m x m permutation pairing angle index t with (t + m/2) mod m.
Eigen::MatrixXd half_turn_shift(int m) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) s(i, (i + m / 2) % m) = 1.0;
  return s;
}

} // namespace

DomainPoint Grid::point_at(int k) const {
  if (k < 0 || k >= size())
    fail(ErrorCode::InvalidArgument, "grid index out of range");
  if (geom.kind == GeometryKind::Rectangle)
    return DomainPoint::from_xy(c1(k), c2(k));
  return DomainPoint::from_polar(c1(k), c2(k));
}

bool Grid::on_boundary(int k) const {
  if (geom.kind == GeometryKind::Rectangle) {
    const int iy = k % ny();
    const int ix = k / ny();
    return ix == 0 || ix == nx() - 1 || iy == 0 || iy == ny() - 1;
  }
  const int ir = k % nr();
  if (geom.kind == GeometryKind::Annulus && ir == 0) return true;
  return ir == nr() - 1;
}

std::shared_ptr<const Grid> build_grid(const Geometry& geom, int n, int m) {
  switch (geom.kind) {
  case GeometryKind::Rectangle: return make_rectangle_grid(n, n, geom.x, geom.y);
  case GeometryKind::Disk: return make_disk_grid(n, m, geom.outer);
  case GeometryKind::Annulus:
    return make_annulus_grid(n, m, geom.inner, geom.outer);
  }
  fail(ErrorCode::InvalidArgument, "unknown geometry kind");
}

DerivativeSet assemble_rectangle(int nx, int ny, Interval x, Interval y) {
  auto grid = make_rectangle_grid(nx, ny, x, y);
  const Eigen::MatrixXd dx1 = chebyshev_diffmat(nx, 1, x);
  const Eigen::MatrixXd dx2 = chebyshev_diffmat(nx, 2, x);
  const Eigen::MatrixXd dy1 = chebyshev_diffmat(ny, 1, y);
  const Eigen::MatrixXd dy2 = chebyshev_diffmat(ny, 2, y);
  DerivativeSet d;
  d.grid = std::move(grid);
  // With k = ix*ny + iy, an x-derivative acts across blocks and a
  // y-derivative within them. Dab equals the product Da*Db, assembled
  // directly as a Kronecker product of the 1D factors.
  d.Da = kron(dx1, identity(ny));
  d.Daa = kron(dx2, identity(ny));
  d.Db = kron(identity(nx), dy1);
  d.Dbb = kron(identity(nx), dy2);
  d.Dab = kron(dx1, dy1);
  return d;
}

DerivativeSet assemble_annulus(int n, int m, double inner, double outer) {
  auto grid = make_annulus_grid(n, m, inner, outer);
  const Eigen::MatrixXd dr1 = chebyshev_diffmat(n, 1, {inner, outer});
  const Eigen::MatrixXd dr2 = chebyshev_diffmat(n, 2, {inner, outer});
  const Eigen::MatrixXd dt1 = fourier_diffmat(m, 1);
  const Eigen::MatrixXd dt2 = fourier_diffmat(m, 2);
  DerivativeSet d;
  d.grid = std::move(grid);
  d.Da = kron(identity(m), dr1);
  d.Daa = kron(identity(m), dr2);
  d.Db = kron(dt1, identity(n));
  d.Dbb = kron(dt2, identity(n));
  d.Dab = kron(dt1, dr1); // = Da*Db for this flattening
  return d;
}

DerivativeSet assemble_disk(int n, int m, double radius) {
  auto grid = make_disk_grid(n, m, radius);
  const int nr = n / 2;
  const Eigen::MatrixXd d1 = chebyshev_diffmat(n, 1, {-radius, radius});
  const Eigen::MatrixXd d2 = chebyshev_diffmat(n, 2, {-radius, radius});

  // Radial derivatives on the double cover: differentiate along the full
  // [-R, R] grid, then fold the negative-radius columns back onto physical
  // unknowns. Column j < n/2 touches the value at radius -x_j = x_{n-1-j} on
  // the opposite ray, hence the reversed column order and the half-turn
  // angular shift.
  auto fold = [nr](const Eigen::MatrixXd& full) {
    Eigen::MatrixXd same = full.block(nr, nr, nr, nr);
    Eigen::MatrixXd opposite(nr, nr);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nr; ++j) opposite(i, j) = full(nr + i, nr - 1 - j);
    return std::make_pair(std::move(same), std::move(opposite));
  };
  const auto [e_same1, e_opp1] = fold(d1);
  const auto [e_same2, e_opp2] = fold(d2);

  const Eigen::MatrixXd dt1 = fourier_diffmat(m, 1);
  const Eigen::MatrixXd dt2 = fourier_diffmat(m, 2);
  const Eigen::MatrixXd shift = half_turn_shift(m);

  DerivativeSet d;
  d.grid = std::move(grid);
  d.Da = kron(identity(m), e_same1) + kron(shift, e_opp1);
  d.Daa = kron(identity(m), e_same2) + kron(shift, e_opp2);
  d.Db = kron(dt1, identity(nr));
  d.Dbb = kron(dt2, identity(nr));
  // Da*Db with the angular factor commuted through the fold.
  d.Dab = kron(dt1, e_same1) + kron(shift * dt1, e_opp1);
  return d;
}

DerivativeSet assemble(const Geometry& geom, int n, int m) {
  switch (geom.kind) {
  case GeometryKind::Rectangle: return assemble_rectangle(n, n, geom.x, geom.y);
  case GeometryKind::Disk: return assemble_disk(n, m, geom.outer);
  case GeometryKind::Annulus:
    return assemble_annulus(n, m, geom.inner, geom.outer);
  }
  fail(ErrorCode::InvalidArgument, "unknown geometry kind");
}

ScalarField constant_field(std::shared_ptr<const Grid> grid, double value) {
  ScalarField f;
  f.values = Eigen::VectorXd::Constant(grid->size(), value);
  f.grid = std::move(grid);
  return f;
}

ScalarField sample_field(std::shared_ptr<const Grid> grid,
                         const std::function<double(const DomainPoint&)>& f) {
  ScalarField out;
  out.values.resize(grid->size());
  for (int k = 0; k < grid->size(); ++k) out.values(k) = f(grid->point_at(k));
  out.grid = std::move(grid);
  return out;
}

namespace {

// Nodal values of a disk field on the full double-cover grid, as an
// (n_full x m) matrix; row j < n/2 holds the antipodal identification
// u(-r, theta) = u(r, theta + pi).
Eigen::MatrixXd disk_full_values(const Grid& g, const Eigen::VectorXd& v) {
  const int nr = g.nr();
  const int m = g.m();
  Eigen::MatrixXd full(2 * nr, m);
  for (int t = 0; t < m; ++t) {
    const int t_opp = (t + m / 2) % m;
    for (int ir = 0; ir < nr; ++ir) {
      full(nr + ir, t) = v(t * nr + ir);
      full(nr - 1 - ir, t) = v(t_opp * nr + ir);
    }
  }
  return full;
}

void check_same_domain(const Grid& a, const Grid& b) {
  if (!a.geom.same_domain(b.geom))
    fail(ErrorCode::GeometryMismatch,
         "field on " + a.geom.describe() + " cannot be used with " +
             b.geom.describe());
}

} // namespace

ScalarField resample(const ScalarField& field,
                     std::shared_ptr<const Grid> target) {
  const Grid& src = *field.grid;
  const Grid& dst = *target;
  check_same_domain(src, dst);

  ScalarField out;
  out.grid = target;
  if (src.geom.kind == GeometryKind::Rectangle) {
    const Eigen::MatrixXd px =
        chebyshev_interp_matrix(src.gx, dst.gx.points);
    const Eigen::MatrixXd py =
        chebyshev_interp_matrix(src.gy, dst.gy.points);
    const Eigen::Map<const Eigen::MatrixXd> u(field.values.data(), src.ny(),
                                              src.nx());
    Eigen::MatrixXd w = py * u * px.transpose();
    out.values = Eigen::Map<Eigen::VectorXd>(w.data(), w.size());
    return out;
  }
  const Eigen::MatrixXd pt = fourier_interp_matrix(src.gt, dst.gt.points);
  if (src.geom.kind == GeometryKind::Annulus) {
    const Eigen::MatrixXd pr = chebyshev_interp_matrix(src.gr, dst.gr.points);
    const Eigen::Map<const Eigen::MatrixXd> u(field.values.data(), src.nr(),
                                              src.m());
    Eigen::MatrixXd w = pr * u * pt.transpose();
    out.values = Eigen::Map<Eigen::VectorXd>(w.data(), w.size());
    return out;
  }
  // Disk: interpolate on the double cover, keep the physical half.
  const Eigen::MatrixXd full = disk_full_values(src, field.values);
  const Eigen::MatrixXd pr = chebyshev_interp_matrix(src.gr, dst.gr.points);
  Eigen::MatrixXd w = (pr * full) * pt.transpose();
  Eigen::MatrixXd phys = w.bottomRows(dst.nr());
  out.values = Eigen::Map<Eigen::VectorXd>(phys.data(), phys.size());
  return out;
}

ScalarField resample(const ScalarField& field, const DerivativeSet& target) {
  return resample(field, target.grid);
}

std::vector<double>
evaluate(const ScalarField& field,
         const std::vector<std::array<double, 2>>& points_xy) {
  const Grid& g = *field.grid;
  std::vector<double> out;
  out.reserve(points_xy.size());

  if (g.geom.kind == GeometryKind::Rectangle) {
    const double slack =
        1e-10 * std::max(g.geom.x.length(), g.geom.y.length());
    for (const auto& [x, y] : points_xy) {
      if (!g.geom.x.contains(x, slack) || !g.geom.y.contains(y, slack))
        fail(ErrorCode::OutOfDomain, "evaluation point outside rectangle");
      const Eigen::MatrixXd lx =
          chebyshev_interp_matrix(g.gx, Eigen::VectorXd::Constant(1, x));
      const Eigen::MatrixXd ly =
          chebyshev_interp_matrix(g.gy, Eigen::VectorXd::Constant(1, y));
      const Eigen::Map<const Eigen::MatrixXd> u(field.values.data(), g.ny(),
                                                g.nx());
      out.push_back((ly * u * lx.transpose())(0, 0));
    }
    return out;
  }

  const double slack = 1e-10 * g.geom.outer;
  const bool disk = g.geom.kind == GeometryKind::Disk;
  Eigen::MatrixXd full;
  if (disk) full = disk_full_values(g, field.values);
  for (const auto& [x, y] : points_xy) {
    const double r = std::hypot(x, y);
    const double theta = (r == 0.0) ? 0.0 : std::atan2(y, x);
    if (r > g.geom.outer + slack ||
        (!disk && r < g.geom.inner - slack))
      fail(ErrorCode::OutOfDomain, "evaluation point outside " +
                                       g.geom.describe());
    const double r_cl =
        disk ? std::min(r, g.geom.outer)
             : std::clamp(r, g.geom.inner, g.geom.outer);
    const Eigen::MatrixXd lr =
        chebyshev_interp_matrix(g.gr, Eigen::VectorXd::Constant(1, r_cl));
    const Eigen::MatrixXd lt =
        fourier_interp_matrix(g.gt, Eigen::VectorXd::Constant(1, theta));
    if (disk) {
      out.push_back((lr * full * lt.transpose())(0, 0));
    } else {
      const Eigen::Map<const Eigen::MatrixXd> u(field.values.data(), g.nr(),
                                                g.m());
      out.push_back((lr * u * lt.transpose())(0, 0));
    }
  }
  return out;
}

double evaluate_at(const ScalarField& field, double x, double y) {
  return evaluate(field, {{x, y}})[0];
}

} // namespace mcs
