#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mcs/derivatives.hpp"
#include "mcs/problem.hpp"

namespace mcs {

enum class RowKind { Interior, Boundary, CornerRow, PinRow };

// Per flattened grid index: which equation occupies that row of the
// assembled nonlinear system.
struct RowClassification {
  std::vector<RowKind> kind;
  std::vector<int> component; // boundary rows: index into ProblemSpec::bcs
  int pin_index = -1;         // flattened index carrying the pin row, or -1
};

RowClassification classify_rows(const ProblemSpec& spec, const Grid& grid);

// Flattened boundary node index used for the height pin: outermost ring node
// at theta = 0 (polar), bottom-edge node nearest the horizontal midpoint
// (rectangle).
int default_pin_index(const Grid& grid);

// Outward normal at a rectangle corner; the components have magnitude 1/2,
// reflecting the corner's half-share of each adjacent edge direction.
std::array<double, 2> corner_normal(Corner c);

// Nonlinear residual N(v) of the full collocation system (interior equation
// rows, boundary rows, optional pin row) and its Frechet derivative L(v).
Eigen::VectorXd residual(const ProblemSpec& spec, const DerivativeSet& d,
                         const ScalarField& v);
Eigen::MatrixXd frechet(const ProblemSpec& spec, const DerivativeSet& d,
                        const ScalarField& v);

// Residual and Frechet derivative in one pass (they share the nodal
// derivative evaluations).
struct AssembledSystem {
  Eigen::VectorXd residual;
  Eigen::MatrixXd frechet;
};
AssembledSystem assemble_system(const ProblemSpec& spec,
                                const DerivativeSet& d, const ScalarField& v);

// Boundary integral of cos(gamma) over all components, computed with
// spectral quadrature; defined only when every component prescribes a
// contact angle (NotApplicable otherwise).
double boundary_cos_gamma_integral(const ProblemSpec& spec);

// Necessary-condition value 2H = (1/|Omega|) * integral of cos(gamma); same
// applicability rule as above.
double cmc_from_contact_angles(const ProblemSpec& spec);

// Solvability and stability screening ahead of a solve. `errors` non-empty
// means the problem is rejected; warnings flag conditions outside the
// regimes with supporting theory.
struct CompatReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  std::optional<double> flux;          // integral of cos(gamma), when defined
  std::optional<double> derived_two_h; // replacement 2H for CMC problems
  bool ok() const { return errors.empty(); }
};

CompatReport check_compatibility(const ProblemSpec& spec);

// Returns the problem actually solved: user 2H replaced by the derived value
// when the report carries one.
ProblemSpec apply_compatibility(const ProblemSpec& spec,
                                const CompatReport& report);

} // namespace mcs
