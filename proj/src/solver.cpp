#include "mcs/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <utility>

namespace mcs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ScalarField initial_field(const ProblemSpec& spec,
                          std::shared_ptr<const Grid> grid,
                          const InitialGuess& guess) {
  switch (guess.kind) {
  case InitialGuess::Kind::Zero: return constant_field(grid, 0.0);
  case InitialGuess::Kind::One: return constant_field(grid, 1.0);
  case InitialGuess::Kind::Field:
    if (!guess.field)
      fail(ErrorCode::InvalidArgument, "field initial guess has no field");
    return resample(*guess.field, grid);
  case InitialGuess::Kind::Function:
    if (!guess.fn)
      fail(ErrorCode::InvalidArgument, "function initial guess has no body");
    return sample_field(grid, guess.fn);
  case InitialGuess::Kind::Default: break;
  }
  // Capillary problems with contact-angle data on every component sit near
  // height kappa^0 * 1 in the model scaling; everything else starts flat.
  const bool start_at_one = spec.pde.family == PdeKind::Family::Capillary &&
                            spec.all_contact_angle();
  return constant_field(grid, start_at_one ? 1.0 : 0.0);
}

int grown(int n) { return n + std::max(8, (n + 4) / 5); }

int even_up(int n) { return n % 2 ? n + 1 : n; }

double relative_norm(const Eigen::VectorXd& num, const Eigen::VectorXd& ref,
                     double eps) {
  return num.norm() / (ref.norm() + eps);
}

} // namespace

NewtonResult newton_solve(const ProblemSpec& spec, const DerivativeSet& d,
                          const ScalarField& v0, const SolverConfig& config) {
  const double tol = config.resolved_tol_newton(spec.geom);
  NewtonResult res;
  res.v = v0;
  if (v0.grid.get() != d.grid.get()) res.v = resample(v0, d.grid);

  for (int it = 1; it <= config.max_newton_iters; ++it) {
    AssembledSystem sys = assemble_system(spec, d, res.v);
    if (!sys.residual.allFinite()) {
      res.status = NewtonStatus::Diverged;
      res.message = "residual became non-finite at iteration " +
                    std::to_string(it);
      return res;
    }
    Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>> lu(sys.frechet);
    const Eigen::VectorXd dv = lu.solve(-sys.residual);
    if (!dv.allFinite()) {
      res.status = NewtonStatus::Diverged;
      res.message = "linear solve produced a non-finite step at iteration " +
                    std::to_string(it) +
                    " (singular or severely ill-conditioned system)";
      return res;
    }
    res.v.values += dv;
    res.iterations = it;
    const double step = relative_norm(dv, res.v.values, config.eps);
    res.step_residuals.push_back(step);
    if (step > 1e6) {
      res.status = NewtonStatus::Diverged;
      res.message = "relative step grew to " + std::to_string(step) +
                    " at iteration " + std::to_string(it);
      return res;
    }
    if (step < tol) {
      res.status = NewtonStatus::Converged;
      return res;
    }
    // Stall cutoff: a healthy Newton iteration contracts fast once it is
    // moving; if five iterations have not even halved the step, the iterate
    // is bouncing around (typically an under-resolved grid near a fold) and
    // more iterations only burn factorizations. The outer loop treats this
    // like an exhausted iteration budget and refines.
    const size_t k = res.step_residuals.size();
    if (k >= 12 && step > 0.5 * res.step_residuals[k - 6]) {
      std::ostringstream os;
      os << "progress stalled: relative step " << step << " at iteration "
         << it << " is not contracting";
      res.message = os.str();
      res.status = NewtonStatus::MaxIterations;
      return res;
    }
  }
  res.status = NewtonStatus::MaxIterations;
  return res;
}

namespace {

Solution solve_with_refinement(const ProblemSpec& spec,
                               const SolverConfig& config,
                               const CompatReport& report,
                               std::optional<ScalarField> warm_start) {
  const ProblemSpec eff = apply_compatibility(spec, report);
  const bool polar = spec.geom.polar();
  const bool disk = spec.geom.kind == GeometryKind::Disk;

  int n = config.resolved_n_init(spec.geom);
  if (disk) n = even_up(n);
  int m = config.m_init;

  Solution sol;
  sol.warnings = report.warnings;
  sol.flux = report.flux;
  sol.derived_two_h = report.derived_two_h;

  std::optional<ScalarField> v = std::move(warm_start);
  std::optional<DerivativeSet> d;

  for (int level = 0; level <= config.max_refinements; ++level) {
    LevelReport lr;
    lr.n = n;
    lr.m = polar ? m : n;

    const auto t_assemble = Clock::now();
    d.reset(); // free the previous level's operators before building new ones
    d = assemble(spec.geom, n, m);
    lr.assemble_seconds = seconds_since(t_assemble);

    ScalarField v0 = v ? resample(*v, d->grid)
                       : initial_field(eff, d->grid, config.guess);

    const auto t_newton = Clock::now();
    NewtonResult nr = newton_solve(eff, *d, v0, config);
    lr.newton_seconds = seconds_since(t_newton);
    lr.newton_status = nr.status;
    lr.newton_iterations = nr.iterations;
    lr.step_residuals = nr.step_residuals;

    if (nr.status == NewtonStatus::Diverged) {
      sol.levels.push_back(std::move(lr));
      sol.v = std::move(nr.v);
      sol.status = SolveStatus::Diverged;
      sol.final_n = n;
      sol.final_m = lr.m;
      sol.failure_reason = "Newton iteration diverged on the " +
                           std::to_string(lr.n) + "-point grid: " + nr.message;
      return sol;
    }

    const Eigen::VectorXd rn = residual(eff, *d, nr.v);
    lr.bvp_residual = relative_norm(rn, nr.v.values, config.eps);
    sol.levels.push_back(lr);
    sol.bvp_residual = lr.bvp_residual;
    sol.v = std::move(nr.v);
    sol.final_n = n;
    sol.final_m = lr.m;

    if (lr.bvp_residual < config.tol_bvp) {
      sol.status = SolveStatus::Converged;
      return sol;
    }

    v = sol.v;
    n = grown(n);
    if (disk) n = even_up(n);
    if (polar) m = even_up(grown(m));
  }

  sol.status = SolveStatus::NotConverged;
  std::ostringstream os;
  os << "equation residual " << sol.bvp_residual
     << " did not reach tol_bvp = " << config.tol_bvp << " after "
     << config.max_refinements << " refinements";
  sol.failure_reason = os.str();
  return sol;
}

} // namespace

Solution adaptive_solve(const ProblemSpec& spec, const SolverConfig& config) {
  spec.validate();
  CompatReport report = check_compatibility(spec);
  if (!report.ok()) {
    std::string msg = "problem rejected:";
    for (const auto& e : report.errors) msg += "\n  - " + e;
    fail(ErrorCode::Incompatible, msg);
  }
  return solve_with_refinement(spec, config, report, std::nullopt);
}

Solution continuation_solve(const ProblemSpec& spec,
                            const SolverConfig& config,
                            const std::vector<double>& schedule) {
  spec.validate();
  bool any_dirichlet = false;
  for (const auto& bc : spec.bcs)
    any_dirichlet |= bc.type == BoundaryCondition::Type::Dirichlet;
  if (!any_dirichlet)
    fail(ErrorCode::NotApplicable,
         "continuation scales Dirichlet data, but no component prescribes "
         "heights");
  if (schedule.empty() || schedule.back() != 1.0)
    fail(ErrorCode::InvalidArgument,
         "continuation schedule must be ascending and end at 1");
  for (size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] <= 0.0 || schedule[i] > 1.0 ||
        (i > 0 && schedule[i] <= schedule[i - 1]))
      fail(ErrorCode::InvalidArgument,
           "continuation schedule must be ascending in (0, 1]");
  }

  CompatReport report = check_compatibility(spec);
  if (!report.ok()) {
    std::string msg = "problem rejected:";
    for (const auto& e : report.errors) msg += "\n  - " + e;
    fail(ErrorCode::Incompatible, msg);
  }
  const ProblemSpec eff = apply_compatibility(spec, report);

  auto scaled = [&eff](double lambda) {
    ProblemSpec s = eff;
    for (auto& bc : s.bcs) {
      if (bc.type != BoundaryCondition::Type::Dirichlet) continue;
      BoundaryFn base = bc.fn;
      bc.fn = [base, lambda](const DomainPoint& p) {
        return lambda * base(p);
      };
    }
    return s;
  };

  const bool disk = spec.geom.kind == GeometryKind::Disk;
  int n = config.resolved_n_init(spec.geom);
  if (disk) n = even_up(n);
  DerivativeSet d = assemble(spec.geom, n, config.m_init);

  Solution sol;
  sol.warnings = report.warnings;
  sol.flux = report.flux;
  sol.derived_two_h = report.derived_two_h;
  sol.lambda_reached = 0.0;

  ScalarField v = initial_field(eff, d.grid, config.guess);
  sol.v = v;
  sol.final_n = n;
  sol.final_m = spec.geom.polar() ? config.m_init : n;

  for (double lambda : schedule) {
    LevelReport lr;
    lr.n = n;
    lr.m = sol.final_m;
    const auto t_newton = Clock::now();
    NewtonResult nr = newton_solve(scaled(lambda), d, v, config);
    lr.newton_seconds = seconds_since(t_newton);
    lr.newton_status = nr.status;
    lr.newton_iterations = nr.iterations;
    lr.step_residuals = nr.step_residuals;
    sol.levels.push_back(std::move(lr));

    if (nr.status != NewtonStatus::Converged) {
      std::ostringstream os;
      os << "continuation stalled at lambda = " << lambda
         << " (reached lambda = " << sol.lambda_reached << ")";
      if (!nr.message.empty()) os << ": " << nr.message;
      sol.failure_reason = os.str();
      sol.status = nr.status == NewtonStatus::Diverged
                       ? SolveStatus::Diverged
                       : SolveStatus::NotConverged;
      const Eigen::VectorXd rn = residual(scaled(sol.lambda_reached), d, sol.v);
      sol.bvp_residual = relative_norm(rn, sol.v.values, config.eps);
      return sol;
    }
    v = nr.v;
    sol.v = nr.v;
    sol.lambda_reached = lambda;
  }

  // Full data reached: free this grid's operators and polish adaptively.
  d = DerivativeSet{};
  Solution polished =
      solve_with_refinement(eff, config, report, std::move(v));
  polished.lambda_reached = 1.0;
  // Keep the continuation trail in front of the refinement levels.
  polished.levels.insert(polished.levels.begin(), sol.levels.begin(),
                         sol.levels.end());
  return polished;
}

} // namespace mcs
