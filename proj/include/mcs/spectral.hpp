#pragma once

#include <Eigen/Dense>

#include "mcs/geometry.hpp"

namespace mcs {

// Chebyshev collocation grid of the second kind on an interval, stored in
// ascending order: points(0) == interval.lo, points(n-1) == interval.hi.
struct ChebGrid {
  int n = 0;
  Interval interval;
  Eigen::VectorXd points;
};

// Equispaced periodic grid theta_t = -pi + 2*pi*t/m, t = 0..m-1 (m even).
struct FourierGrid {
  int m = 0;
  Eigen::VectorXd points;
};

ChebGrid chebyshev_points(int n, Interval interval);
FourierGrid fourier_points(int m);

// Dense differentiation matrix of the given order (1 or 2) on the n-point
// Chebyshev grid over `interval`, acting on vectors of nodal values in
// ascending point order. Entries come from the barycentric closed forms with
// diagonals from the negative-sum trick; order 2 is built directly (not as a
// matrix square).
Eigen::MatrixXd chebyshev_diffmat(int n, int order, Interval interval);

// Spectral differentiation matrix on the m-point periodic grid (m even),
// order 1 or 2.
Eigen::MatrixXd fourier_diffmat(int m, int order);

// Barycentric weights for the n-point Chebyshev grid, ascending order
// (proportional to (-1)^j with halved endpoints).
Eigen::VectorXd chebyshev_barycentric_weights(int n);

// Interpolation matrix P with P*values = interpolant evaluated at `targets`.
// Targets that coincide with grid points reproduce nodal values exactly.
Eigen::MatrixXd chebyshev_interp_matrix(const ChebGrid& from,
                                        const Eigen::VectorXd& targets);
Eigen::MatrixXd fourier_interp_matrix(const FourierGrid& from,
                                      const Eigen::VectorXd& targets);

// Clenshaw-Curtis quadrature weights on the n-point Chebyshev grid over
// `interval` (ascending order): integral ~ weights.dot(values).
Eigen::VectorXd clenshaw_curtis_weights(int n, Interval interval);

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

} // namespace mcs
