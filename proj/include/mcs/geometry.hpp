#pragma once

#include <string>
#include <vector>

#include "mcs/errors.hpp"

namespace mcs {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  double halfwidth() const { return 0.5 * (hi - lo); }
  bool contains(double t, double slack = 0.0) const {
    return t >= lo - slack && t <= hi + slack;
  }
};

enum class GeometryKind { Rectangle, Disk, Annulus };

// Boundary components in the fixed order used throughout (boundary-condition
// lists, component indices in assembled rows, CSV output):
//   Rectangle: Left, Right, Bottom, Top
//   Disk:      Rim
//   Annulus:   InnerRing, OuterRing
enum class Component { Left, Right, Bottom, Top, Rim, InnerRing, OuterRing };

enum class Corner { BottomLeft, BottomRight, TopLeft, TopRight };

struct Geometry {
  GeometryKind kind = GeometryKind::Rectangle;
  Interval x, y;      // rectangle extents
  double inner = 0.0; // annulus inner radius
  double outer = 1.0; // disk radius / annulus outer radius

  static Geometry rectangle(Interval x, Interval y);
  static Geometry square(double lo, double hi);
  static Geometry disk(double radius);
  static Geometry annulus(double inner, double outer);

  bool polar() const { return kind != GeometryKind::Rectangle; }
  double area() const;
  double perimeter() const;
  bool same_domain(const Geometry& other, double tol = 1e-12) const;
  std::vector<Component> components() const;
  std::string describe() const;
};

// Coordinate bundle handed to boundary-data and initial-guess callbacks; both
// Cartesian and polar coordinates are always filled in.
struct DomainPoint {
  double x = 0.0;
  double y = 0.0;
  double r = 0.0;
  double theta = 0.0;

  static DomainPoint from_xy(double x, double y);
  static DomainPoint from_polar(double r, double theta);
};

std::string to_string(Component c);
std::string to_string(Corner c);

} // namespace mcs
