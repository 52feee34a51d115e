#include "mcs/spectral.hpp"

#include <cmath>
#include <string>

namespace mcs {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void require_cheb_n(int n) {
  if (n < 2)
    fail(ErrorCode::InvalidArgument,
         "Chebyshev grid needs at least 2 points, got " + std::to_string(n));
}

void require_fourier_m(int m) {
  if (m < 2 || m % 2 != 0)
    fail(ErrorCode::InvalidArgument,
         "periodic grid size must be even and >= 2, got " + std::to_string(m));
}

void require_order(int order) {
  if (order != 1 && order != 2)
    fail(ErrorCode::InvalidArgument,
         "derivative order must be 1 or 2, got " + std::to_string(order));
}

int parity_sign(int k) { return (k & 1) ? -1 : 1; }
} // namespace

ChebGrid chebyshev_points(int n, Interval interval) {
  require_cheb_n(n);
  if (!(interval.lo < interval.hi))
    fail(ErrorCode::InvalidArgument, "interval must satisfy lo < hi");
  ChebGrid g;
  g.n = n;
  g.interval = interval;
  g.points.resize(n);
  const double mid = interval.midpoint();
  const double half = interval.halfwidth();
  // sin form keeps the reference points exactly symmetric about 0 (so odd n
  // yields an exact midpoint), ascending from -1 to 1.
  for (int j = 0; j < n; ++j) {
    const double ref = std::sin(kPi * (2 * j - (n - 1)) / (2.0 * (n - 1)));
    g.points(j) = mid + half * ref;
  }
  g.points(0) = interval.lo;
  g.points(n - 1) = interval.hi;
  return g;
}

FourierGrid fourier_points(int m) {
  require_fourier_m(m);
  FourierGrid g;
  g.m = m;
  g.points.resize(m);
  for (int t = 0; t < m; ++t) g.points(t) = -kPi + 2.0 * kPi * t / m;
  return g;
}

Eigen::VectorXd chebyshev_barycentric_weights(int n) {
  require_cheb_n(n);
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) w(j) = parity_sign(j);
  w(0) *= 0.5;
  w(n - 1) *= 0.5;
  return w;
}

Eigen::MatrixXd chebyshev_diffmat(int n, int order, Interval interval) {
  require_order(order);
  const ChebGrid g = chebyshev_points(n, interval);
  const Eigen::VectorXd w = chebyshev_barycentric_weights(n);
  const Eigen::VectorXd& x = g.points;

  Eigen::MatrixXd d1(n, n);
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = (w(j) / w(i)) / (x(i) - x(j));
      d1(i, j) = v;
      rowsum += v;
    }
    d1(i, i) = -rowsum;
  }
  if (order == 1) return d1;

  // Second order from the barycentric recursion; diagonals again by the
  // negative-sum trick so constants are annihilated exactly.
  Eigen::MatrixXd d2(n, n);
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = 2.0 * d1(i, j) * (d1(i, i) - 1.0 / (x(i) - x(j)));
      d2(i, j) = v;
      rowsum += v;
    }
    d2(i, i) = -rowsum;
  }
  return d2;
}

Eigen::MatrixXd fourier_diffmat(int m, int order) {
  require_order(order);
  require_fourier_m(m);
  Eigen::MatrixXd d(m, m);
  const double h = 2.0 * kPi / m;
  for (int i = 0; i < m; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const double arg = 0.5 * h * (i - j);
      double v;
      if (order == 1) {
        v = 0.5 * parity_sign(i - j) / std::tan(arg);
      } else {
        const double s = std::sin(arg);
        v = -0.5 * parity_sign(i - j) / (s * s);
      }
      d(i, j) = v;
      rowsum += v;
    }
    d(i, i) = -rowsum;
  }
  return d;
}

Eigen::MatrixXd chebyshev_interp_matrix(const ChebGrid& from,
                                        const Eigen::VectorXd& targets) {
  const int n = from.n;
  const Eigen::VectorXd w = chebyshev_barycentric_weights(n);
  const Eigen::VectorXd& x = from.points;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(targets.size(), n);
  for (Eigen::Index t = 0; t < targets.size(); ++t) {
    const double xt = targets(t);
    int hit = -1;
    for (int j = 0; j < n; ++j) {
      if (xt == x(j)) {
        hit = j;
        break;
      }
    }
    if (hit >= 0) {
      p(t, hit) = 1.0;
      continue;
    }
    double denom = 0.0;
    for (int j = 0; j < n; ++j) {
      const double c = w(j) / (xt - x(j));
      p(t, j) = c;
      denom += c;
    }
    p.row(t) /= denom;
  }
  return p;
}

Eigen::MatrixXd fourier_interp_matrix(const FourierGrid& from,
                                      const Eigen::VectorXd& targets) {
  const int m = from.m;
  Eigen::MatrixXd p(targets.size(), m);
  for (Eigen::Index t = 0; t < targets.size(); ++t) {
    for (int j = 0; j < m; ++j) {
      const double d = std::remainder(targets(t) - from.points(j), 2.0 * kPi);
      if (std::abs(d) < 1e-15) {
        p(t, j) = 1.0;
      } else {
        // Periodic sinc kernel for even m.
        p(t, j) =
            std::sin(0.5 * m * d) * std::cos(0.5 * d) / (m * std::sin(0.5 * d));
      }
    }
  }
  return p;
}

Eigen::VectorXd clenshaw_curtis_weights(int n, Interval interval) {
  require_cheb_n(n);
  const int big_n = n - 1;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  if (big_n == 1) {
    w(0) = w(1) = 1.0;
  } else {
    const bool even = (big_n % 2 == 0);
    const double end = even ? 1.0 / (double(big_n) * big_n - 1.0)
                            : 1.0 / (double(big_n) * big_n);
    w(0) = w(big_n) = end;
    for (int i = 1; i < big_n; ++i) {
      const double theta = kPi * i / big_n;
      double v = 1.0;
      const int kmax = even ? big_n / 2 - 1 : (big_n - 1) / 2;
      for (int k = 1; k <= kmax; ++k)
        v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      if (even)
        v -= std::cos(big_n * theta) / (double(big_n) * big_n - 1.0);
      w(i) = 2.0 * v / big_n;
    }
  }
  // Weights above integrate over [-1,1] with descending cos-ordered points;
  // they are symmetric, so ascending order uses them unchanged.
  return interval.halfwidth() * w;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

} // namespace mcs
