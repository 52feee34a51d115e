#include "mcs/geometry.hpp"

#include <cmath>
#include <sstream>

namespace mcs {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void require_interval(const Interval& iv, const char* name) {
  if (!(iv.lo < iv.hi))
    fail(ErrorCode::InvalidArgument,
         std::string(name) + " interval must satisfy lo < hi");
}
} // namespace

Geometry Geometry::rectangle(Interval x, Interval y) {
  require_interval(x, "x");
  require_interval(y, "y");
  Geometry g;
  g.kind = GeometryKind::Rectangle;
  g.x = x;
  g.y = y;
  return g;
}

Geometry Geometry::square(double lo, double hi) {
  return rectangle({lo, hi}, {lo, hi});
}

Geometry Geometry::disk(double radius) {
  if (!(radius > 0.0))
    fail(ErrorCode::InvalidArgument, "disk radius must be positive");
  Geometry g;
  g.kind = GeometryKind::Disk;
  g.outer = radius;
  return g;
}

Geometry Geometry::annulus(double inner, double outer) {
  if (!(inner > 0.0) || !(outer > inner))
    fail(ErrorCode::InvalidArgument,
         "annulus radii must satisfy 0 < inner < outer");
  Geometry g;
  g.kind = GeometryKind::Annulus;
  g.inner = inner;
  g.outer = outer;
  return g;
}

double Geometry::area() const {
  switch (kind) {
  case GeometryKind::Rectangle: return x.length() * y.length();
  case GeometryKind::Disk: return kPi * outer * outer;
  case GeometryKind::Annulus: return kPi * (outer * outer - inner * inner);
  }
  return 0.0;
}

double Geometry::perimeter() const {
  switch (kind) {
  case GeometryKind::Rectangle: return 2.0 * (x.length() + y.length());
  case GeometryKind::Disk: return 2.0 * kPi * outer;
  case GeometryKind::Annulus: return 2.0 * kPi * (inner + outer);
  }
  return 0.0;
}

bool Geometry::same_domain(const Geometry& other, double tol) const {
  if (kind != other.kind) return false;
  auto close = [tol](double a, double b) { return std::abs(a - b) <= tol; };
  switch (kind) {
  case GeometryKind::Rectangle:
    return close(x.lo, other.x.lo) && close(x.hi, other.x.hi) &&
           close(y.lo, other.y.lo) && close(y.hi, other.y.hi);
  case GeometryKind::Disk: return close(outer, other.outer);
  case GeometryKind::Annulus:
    return close(inner, other.inner) && close(outer, other.outer);
  }
  return false;
}

std::vector<Component> Geometry::components() const {
  switch (kind) {
  case GeometryKind::Rectangle:
    return {Component::Left, Component::Right, Component::Bottom,
            Component::Top};
  case GeometryKind::Disk: return {Component::Rim};
  case GeometryKind::Annulus:
    return {Component::InnerRing, Component::OuterRing};
  }
  return {};
}

std::string Geometry::describe() const {
  std::ostringstream os;
  switch (kind) {
  case GeometryKind::Rectangle:
    os << "rectangle [" << x.lo << "," << x.hi << "]x[" << y.lo << "," << y.hi
       << "]";
    break;
  case GeometryKind::Disk: os << "disk of radius " << outer; break;
  case GeometryKind::Annulus:
    os << "annulus with radii " << inner << " < r < " << outer;
    break;
  }
  return os.str();
}

DomainPoint DomainPoint::from_xy(double x, double y) {
  DomainPoint p;
  p.x = x;
  p.y = y;
  p.r = std::hypot(x, y);
  p.theta = (p.r == 0.0) ? 0.0 : std::atan2(y, x);
  return p;
}

DomainPoint DomainPoint::from_polar(double r, double theta) {
  DomainPoint p;
  p.r = r;
  p.theta = theta;
  p.x = r * std::cos(theta);
  p.y = r * std::sin(theta);
  return p;
}

std::string to_string(Component c) {
  switch (c) {
  case Component::Left: return "left";
  case Component::Right: return "right";
  case Component::Bottom: return "bottom";
  case Component::Top: return "top";
  case Component::Rim: return "rim";
  case Component::InnerRing: return "inner";
  case Component::OuterRing: return "outer";
  }
  return "?";
}

std::string to_string(Corner c) {
  switch (c) {
  case Corner::BottomLeft: return "bottom-left";
  case Corner::BottomRight: return "bottom-right";
  case Corner::TopLeft: return "top-left";
  case Corner::TopRight: return "top-right";
  }
  return "?";
}

} // namespace mcs
