#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mcs/operators.hpp"

namespace mcs {

struct InitialGuess {
  enum class Kind { Default, Zero, One, Field, Function };
  Kind kind = Kind::Default;
  std::optional<ScalarField> field;                // Kind::Field
  std::function<double(const DomainPoint&)> fn;    // Kind::Function

  static InitialGuess zero() { return {Kind::Zero, {}, {}}; }
  static InitialGuess one() { return {Kind::One, {}, {}}; }
  static InitialGuess from_field(ScalarField f) {
    return {Kind::Field, std::move(f), {}};
  }
  static InitialGuess
  from_function(std::function<double(const DomainPoint&)> fn) {
    return {Kind::Function, {}, std::move(fn)};
  }
};

struct SolverConfig {
  // Newton stops when the relative step ||dv|| / (||v|| + eps) drops below
  // tol_newton. Unset uses 1e-14 on rectangles and 1e-13 on polar domains.
  std::optional<double> tol_newton;
  // Adaptive refinement stops when the relative equation residual
  // ||N(v)|| / (||v|| + eps) drops below tol_bvp.
  double tol_bvp = 1e-10;
  double eps = 1e-8;

  // Initial resolution. Unset n_init uses 55 on rectangles, 50 on polar
  // domains; m_init is the angular count for polar domains.
  std::optional<int> n_init;
  int m_init = 80;

  int max_newton_iters = 50;
  int max_refinements = 4;

  InitialGuess guess;

  // > 0 turns on continuation in the Dirichlet data with a uniform schedule
  // lambda = i/steps, i = 1..steps.
  int continuation_steps = 0;

  double resolved_tol_newton(const Geometry& g) const {
    if (tol_newton) return *tol_newton;
    return g.polar() ? 1e-13 : 1e-14;
  }
  int resolved_n_init(const Geometry& g) const {
    if (n_init) return *n_init;
    return g.polar() ? 50 : 55;
  }
};

enum class NewtonStatus { Converged, MaxIterations, Diverged };

struct NewtonResult {
  ScalarField v;
  NewtonStatus status = NewtonStatus::MaxIterations;
  int iterations = 0;
  // Relative step sizes ||dv_k|| / (||v_k|| + eps), post-update norms.
  std::vector<double> step_residuals;
  std::string message; // reason when Diverged
};

// Newton iteration on a fixed grid. Divergence (non-finite values or a
// relative step beyond 1e6) is reported through `status`, never thrown.
// An iteration whose step sizes stop contracting is cut off early and
// reported as MaxIterations so the caller can refine instead of spinning.
NewtonResult newton_solve(const ProblemSpec& spec, const DerivativeSet& d,
                          const ScalarField& v0, const SolverConfig& config);

enum class SolveStatus { Converged, NotConverged, Diverged };

struct LevelReport {
  int n = 0, m = 0;
  NewtonStatus newton_status = NewtonStatus::MaxIterations;
  int newton_iterations = 0;
  std::vector<double> step_residuals;
  double bvp_residual = std::numeric_limits<double>::quiet_NaN();
  double assemble_seconds = 0.0;
  double newton_seconds = 0.0;
};

struct Solution {
  ScalarField v;
  SolveStatus status = SolveStatus::NotConverged;
  double bvp_residual = std::numeric_limits<double>::quiet_NaN();
  int final_n = 0, final_m = 0;
  std::vector<LevelReport> levels;
  std::vector<std::string> warnings;
  std::optional<double> flux;
  std::optional<double> derived_two_h;
  double lambda_reached = 1.0; // continuation only; 1 otherwise
  std::string failure_reason;
};

// Full solve: compatibility screening (Incompatible is thrown), then Newton
// with grid refinement n <- n + max(8, ceil(n/5)) until the relative
// equation residual meets tol_bvp or max_refinements is exhausted. A Newton
// iteration that merely stalls still refines; only divergence stops early.
Solution adaptive_solve(const ProblemSpec& spec, const SolverConfig& config);

// Continuation in the Dirichlet data: solves with data scaled by each lambda
// in `schedule` (ascending, ending at 1), warm-starting from the previous
// step, then polishes with adaptive refinement. On a failed step returns the
// last good state with `lambda_reached` set instead of throwing.
Solution continuation_solve(const ProblemSpec& spec,
                            const SolverConfig& config,
                            const std::vector<double>& schedule);

} // namespace mcs
