#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "mcs/spectral.hpp"

namespace mcs {

// Collocation grid for one domain, plus flattening and boundary bookkeeping.
//
// Flattening conventions (fixed project-wide):
//   rectangle: k = ix*ny + iy   (y index fastest)
//   disk/annulus: k = it*nr + ir (radial index fastest)
//
// For the disk the radial Chebyshev grid lives on [-R, R] (even point count,
// r = 0 excluded); only the positive radii are unknowns and `radii` holds
// them. Values at negative radii are identified with (r, theta+pi), and the
// derivative operators bake that identification in.
struct Grid {
  Geometry geom;

  ChebGrid gx, gy; // rectangle
  ChebGrid gr;     // annulus: [a,b]; disk: full double-cover grid on [-R,R]
  FourierGrid gt;  // angular grid
  Eigen::VectorXd radii; // physical radial points (disk: positive half of gr)

  // Native coordinates per flattened index: (x,y) or (r,theta).
  Eigen::VectorXd c1, c2;

  // Boundary bookkeeping (flattened indices, ascending along the component).
  // `edges` is indexed in the order Left, Right, Bottom, Top and excludes
  // corner nodes; `corners` is indexed by Corner.
  std::array<std::vector<int>, 4> edges;
  std::array<int, 4> corners{-1, -1, -1, -1};
  std::vector<int> inner_ring, outer_ring;

  int size() const { return static_cast<int>(c1.size()); }
  int nx() const { return gx.n; }
  int ny() const { return gy.n; }
  int nr() const { return static_cast<int>(radii.size()); }
  int m() const { return gt.m; }

  DomainPoint point_at(int k) const;
  bool on_boundary(int k) const;
};

// Grid plus the five dense derivative operators acting on flattened nodal
// value vectors. `a` is the first native coordinate (x or r) and `b` the
// second (y or theta).
struct DerivativeSet {
  std::shared_ptr<const Grid> grid;
  Eigen::MatrixXd Da, Db, Daa, Dbb, Dab;
};

struct ScalarField {
  std::shared_ptr<const Grid> grid;
  Eigen::VectorXd values;

  double max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

std::shared_ptr<const Grid> build_grid(const Geometry& geom, int n, int m);

DerivativeSet assemble_rectangle(int nx, int ny, Interval x, Interval y);
DerivativeSet assemble_annulus(int n, int m, double inner, double outer);
DerivativeSet assemble_disk(int n, int m, double radius); // n even
// Dispatch on geometry kind; rectangles use nx = ny = n and ignore m.
DerivativeSet assemble(const Geometry& geom, int n, int m);

ScalarField constant_field(std::shared_ptr<const Grid> grid, double value);
ScalarField sample_field(std::shared_ptr<const Grid> grid,
                         const std::function<double(const DomainPoint&)>& f);

// Spectral interpolation of `field` onto the grid of `target`. Domains must
// match exactly.
ScalarField resample(const ScalarField& field, const DerivativeSet& target);
ScalarField resample(const ScalarField& field,
                     std::shared_ptr<const Grid> target);

// Evaluate the spectral interpolant at Cartesian query points inside the
// closed domain (any geometry). Points outside raise OutOfDomain.
std::vector<double>
evaluate(const ScalarField& field,
         const std::vector<std::array<double, 2>>& points_xy);
double evaluate_at(const ScalarField& field, double x, double y);

} // namespace mcs
