#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mcs/geometry.hpp"

namespace mcs {

// Equation family for the graph u over the domain:
//   Minimal:    mean curvature 0
//   Cmc:        constant mean curvature, prescribed as 2H
//   Capillary:  gravity-type right-hand side, 2H replaced by kappa*u
struct PdeKind {
  enum class Family { Minimal, Cmc, Capillary };
  Family family = Family::Minimal;
  double two_h = 0.0; // Cmc only
  double kappa = 1.0; // Capillary only

  static PdeKind minimal() { return {Family::Minimal, 0.0, 0.0}; }
  static PdeKind cmc(double two_h) { return {Family::Cmc, two_h, 0.0}; }
  static PdeKind capillary(double kappa) {
    return {Family::Capillary, 0.0, kappa};
  }
};

using BoundaryFn = std::function<double(const DomainPoint&)>;

// One boundary component's data: either a prescribed height (Dirichlet) or a
// prescribed contact angle gamma in radians measured against the bounding
// cylinder, entering the equations through cos(gamma).
struct BoundaryCondition {
  enum class Type { Dirichlet, ContactAngle };
  Type type = Type::Dirichlet;
  BoundaryFn fn;

  static BoundaryCondition dirichlet(BoundaryFn g) {
    return {Type::Dirichlet, std::move(g)};
  }
  static BoundaryCondition dirichlet(double g) {
    return dirichlet([g](const DomainPoint&) { return g; });
  }
  static BoundaryCondition contact_angle(BoundaryFn gamma) {
    return {Type::ContactAngle, std::move(gamma)};
  }
  static BoundaryCondition contact_angle(double gamma) {
    return contact_angle([gamma](const DomainPoint&) { return gamma; });
  }
};

// Optional height normalization for problems whose solution is only
// determined up to a vertical shift (minimal/CMC with contact-angle data on
// every component): replaces one boundary row with u = height at a fixed
// boundary node.
struct Pin {
  double height = 1.0;
};

struct ProblemSpec {
  Geometry geom;
  PdeKind pde;
  // One entry per boundary component, in Geometry::components() order.
  std::vector<BoundaryCondition> bcs;
  std::optional<Pin> pin;

  bool all_contact_angle() const {
    for (const auto& bc : bcs)
      if (bc.type != BoundaryCondition::Type::ContactAngle) return false;
    return !bcs.empty();
  }
  bool any_contact_angle() const {
    for (const auto& bc : bcs)
      if (bc.type == BoundaryCondition::Type::ContactAngle) return true;
    return false;
  }

  // Throws InvalidArgument unless bcs matches the geometry's component count
  // and pde parameters are sane.
  void validate() const;
};

} // namespace mcs
