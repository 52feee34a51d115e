#include "mcs/run_config.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "mcs/expr.hpp"

namespace mcs::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  fail(ErrorCode::ConfigError, path + ": " + msg);
}

const json& member(const json& j, const std::string& path,
                   const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) bad(path, "missing required field '" + key + "'");
  return *it;
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok |= key == k;
    if (!ok) bad(path, "unknown field '" + key + "'");
  }
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

Interval interval_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    bad(path, "expected [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Geometry parse_geometry(const json& j) {
  const std::string path = "geometry";
  if (!j.is_object()) bad(path, "expected an object");
  const json& kind = member(j, path, "kind");
  if (!kind.is_string()) bad(path + ".kind", "expected a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "rectangle") {
      reject_unknown(j, path, {"kind", "x", "y"});
      return Geometry::rectangle(interval_at(member(j, path, "x"), path + ".x"),
                                 interval_at(member(j, path, "y"), path + ".y"));
    }
    if (k == "disk") {
      reject_unknown(j, path, {"kind", "radius"});
      return Geometry::disk(number_at(member(j, path, "radius"), path + ".radius"));
    }
    if (k == "annulus") {
      reject_unknown(j, path, {"kind", "inner", "outer"});
      return Geometry::annulus(
          number_at(member(j, path, "inner"), path + ".inner"),
          number_at(member(j, path, "outer"), path + ".outer"));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    bad(path, e.what());
  }
  bad(path + ".kind", "expected \"rectangle\", \"disk\", or \"annulus\"");
}

PdeKind parse_pde(const json& j) {
  const std::string path = "pde";
  if (!j.is_object()) bad(path, "expected an object");
  const json& fam = member(j, path, "family");
  if (!fam.is_string()) bad(path + ".family", "expected a string");
  const std::string f = fam.get<std::string>();
  if (f == "minimal") {
    reject_unknown(j, path, {"family"});
    return PdeKind::minimal();
  }
  if (f == "cmc") {
    reject_unknown(j, path, {"family", "two_h"});
    return PdeKind::cmc(number_at(member(j, path, "two_h"), path + ".two_h"));
  }
  if (f == "capillary") {
    reject_unknown(j, path, {"family", "kappa"});
    return PdeKind::capillary(
        number_at(member(j, path, "kappa"), path + ".kappa"));
  }
  bad(path + ".family", "expected \"minimal\", \"cmc\", or \"capillary\"");
}

// Compiles a boundary or guess expression and pins down which variables it
// may reference; circular components see theta, rectangle edges see x and y.
std::function<double(const DomainPoint&)>
compile_expression(const json& j, const std::string& path, bool polar,
                   bool guess) {
  if (j.is_number()) {
    const double c = j.get<double>();
    return [c](const DomainPoint&) { return c; };
  }
  if (!j.is_string()) bad(path, "expected an expression string or number");
  expr::Expr e;
  try {
    e = expr::parse(j.get<std::string>());
  } catch (const Error& err) {
    bad(path, err.what());
  }
  for (const std::string& v : e.variables()) {
    const bool ok = guess ? true
                  : polar ? v == "theta"
                          : v == "x" || v == "y";
    if (!ok)
      bad(path, "variable '" + v + "' is not available here (" +
                    (polar ? "circular components are parameterized by theta"
                           : "rectangle edges are parameterized by x and y") +
                    ")");
  }
  if (guess) {
    return [e](const DomainPoint& p) {
      return e.eval({{"x", p.x}, {"y", p.y}, {"r", p.r}, {"theta", p.theta}});
    };
  }
  if (polar) {
    return [e](const DomainPoint& p) { return e.eval({{"theta", p.theta}}); };
  }
  return [e](const DomainPoint& p) {
    return e.eval({{"x", p.x}, {"y", p.y}});
  };
}

BoundaryCondition parse_component_bc(const json& j, const std::string& path,
                                     bool polar) {
  if (!j.is_object()) bad(path, "expected an object");
  const bool has_d = j.contains("dirichlet");
  const bool has_a = j.contains("contact_angle");
  if (has_d == has_a)
    bad(path, "expected exactly one of 'dirichlet' or 'contact_angle'");
  reject_unknown(j, path, {"dirichlet", "contact_angle"});
  if (has_d)
    return BoundaryCondition::dirichlet(
        compile_expression(j["dirichlet"], path + ".dirichlet", polar, false));
  return BoundaryCondition::contact_angle(compile_expression(
      j["contact_angle"], path + ".contact_angle", polar, false));
}

std::vector<BoundaryCondition> parse_boundary(const json& j,
                                              const Geometry& geom) {
  const std::string path = "boundary";
  if (!j.is_object()) bad(path, "expected an object");
  const auto components = geom.components();
  std::vector<BoundaryCondition> bcs;

  if (j.contains("all")) {
    reject_unknown(j, path, {"all"});
    for (size_t i = 0; i < components.size(); ++i)
      bcs.push_back(
          parse_component_bc(j["all"], path + ".all", geom.polar()));
    return bcs;
  }

  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (Component c : components) ok |= key == to_string(c);
    if (!ok)
      bad(path, "unknown component '" + key + "' for a " +
                    std::string(geom.describe()));
  }
  for (Component c : components) {
    const std::string name = to_string(c);
    if (!j.contains(name))
      bad(path, "missing component '" + name + "'");
    bcs.push_back(
        parse_component_bc(j[name], path + "." + name, geom.polar()));
  }
  return bcs;
}

InitialGuess parse_guess(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "default") return {};
    if (s == "zero") return InitialGuess::zero();
    if (s == "one") return InitialGuess::one();
    bad(path, "expected \"default\", \"zero\", \"one\", or {\"expression\": ...}");
  }
  if (j.is_object()) {
    reject_unknown(j, path, {"expression"});
    return InitialGuess::from_function(compile_expression(
        member(j, path, "expression"), path + ".expression", false, true));
  }
  bad(path, "expected a string or {\"expression\": ...}");
}

void parse_solver(const json& j, RunConfig& cfg) {
  const std::string path = "solver";
  if (!j.is_object()) bad(path, "expected an object");
  reject_unknown(j, path,
                 {"tol_newton", "tol_bvp", "eps", "n_init", "m_init",
                  "max_newton_iters", "max_refinements", "guess",
                  "continuation_steps", "continuation_schedule"});
  SolverConfig& s = cfg.solver;
  if (j.contains("tol_newton"))
    s.tol_newton = number_at(j["tol_newton"], path + ".tol_newton");
  if (j.contains("tol_bvp"))
    s.tol_bvp = number_at(j["tol_bvp"], path + ".tol_bvp");
  if (j.contains("eps")) s.eps = number_at(j["eps"], path + ".eps");
  auto int_at = [&](const char* key) {
    const json& v = j[key];
    if (!v.is_number_integer())
      bad(path + "." + key, "expected an integer");
    return v.get<int>();
  };
  if (j.contains("n_init")) s.n_init = int_at("n_init");
  if (j.contains("m_init")) s.m_init = int_at("m_init");
  if (j.contains("max_newton_iters"))
    s.max_newton_iters = int_at("max_newton_iters");
  if (j.contains("max_refinements"))
    s.max_refinements = int_at("max_refinements");
  if (j.contains("guess")) s.guess = parse_guess(j["guess"], path + ".guess");

  const bool steps = j.contains("continuation_steps");
  const bool sched = j.contains("continuation_schedule");
  if (steps && sched)
    bad(path, "give either continuation_steps or continuation_schedule");
  if (steps) {
    const int k = int_at("continuation_steps");
    if (k < 0) bad(path + ".continuation_steps", "expected a count >= 0");
    s.continuation_steps = k;
    for (int i = 1; i <= k; ++i)
      cfg.continuation.push_back(double(i) / double(k));
  }
  if (sched) {
    const json& a = j["continuation_schedule"];
    if (!a.is_array() || a.empty())
      bad(path + ".continuation_schedule", "expected a non-empty array");
    for (const auto& v : a)
      cfg.continuation.push_back(
          number_at(v, path + ".continuation_schedule"));
  }
}

void parse_output(const json& j, OutputConfig& out) {
  const std::string path = "output";
  if (!j.is_object()) bad(path, "expected an object");
  reject_unknown(j, path, {"dir", "solution_csv", "meta_json", "boundary_csv"});
  auto bool_at = [&](const char* key, bool dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_boolean()) bad(path + "." + key, "expected a boolean");
    return j[key].get<bool>();
  };
  if (j.contains("dir")) {
    if (!j["dir"].is_string()) bad(path + ".dir", "expected a string");
    out.dir = j["dir"].get<std::string>();
  }
  out.solution_csv = bool_at("solution_csv", out.solution_csv);
  out.meta_json = bool_at("meta_json", out.meta_json);
  out.boundary_csv = bool_at("boundary_csv", out.boundary_csv);
}

} // namespace

void apply_overrides(json& doc, const std::vector<std::string>& overrides) {
  for (const std::string& raw : overrides) {
    std::string_view s = raw;
    while (s.starts_with("-")) s.remove_prefix(1);
    const size_t eq = s.find('=');
    if (eq == std::string_view::npos || eq == 0)
      fail(ErrorCode::ConfigError,
           "override '" + raw + "' is not of the form path.to.field=value");
    std::string pointer = "/";
    for (char c : s.substr(0, eq)) pointer += c == '.' ? '/' : c;
    const std::string value(s.substr(eq + 1));
    json parsed = json::parse(value, nullptr, /*allow_exceptions=*/false);
    try {
      doc[json::json_pointer(pointer)] =
          parsed.is_discarded() ? json(value) : parsed;
    } catch (const json::exception& e) {
      fail(ErrorCode::ConfigError,
           "override '" + raw + "' does not address a settable field (" +
               e.what() + ")");
    }
  }
}

RunConfig load_config(const json& doc) {
  if (!doc.is_object())
    fail(ErrorCode::ConfigError, "config: expected a JSON object");
  reject_unknown(doc, "config",
                 {"description", "preset", "geometry", "pde", "boundary",
                  "pin", "solver", "output"});
  RunConfig cfg;
  cfg.raw = doc;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) bad("preset", "expected a string");
    cfg.preset = doc["preset"].get<std::string>();
  }
  if (doc.contains("description")) {
    if (!doc["description"].is_string())
      bad("description", "expected a string");
    cfg.description = doc["description"].get<std::string>();
  }

  cfg.spec.geom = parse_geometry(member(doc, "config", "geometry"));
  cfg.spec.pde = parse_pde(member(doc, "config", "pde"));
  cfg.spec.bcs = parse_boundary(member(doc, "config", "boundary"), cfg.spec.geom);

  if (doc.contains("pin")) {
    const json& p = doc["pin"];
    if (p.is_number()) {
      cfg.spec.pin = Pin{p.get<double>()};
    } else if (p.is_object()) {
      reject_unknown(p, "pin", {"height"});
      cfg.spec.pin = Pin{number_at(member(p, "pin", "height"), "pin.height")};
    } else {
      bad("pin", "expected a number or {\"height\": ...}");
    }
  }

  if (doc.contains("solver")) parse_solver(doc["solver"], cfg);
  if (doc.contains("output")) parse_output(doc["output"], cfg.output);

  cfg.spec.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path,
                           const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config file " + path);
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded())
    fail(ErrorCode::ConfigError, path + " is not well-formed JSON");
  apply_overrides(doc, overrides);
  return load_config(doc);
}

RunConfig preset_config(const std::string& name,
                        const std::vector<std::string>& overrides) {
  json doc = preset_json(name);
  doc["preset"] = name;
  apply_overrides(doc, overrides);
  RunConfig cfg = load_config(doc);
  return cfg;
}

namespace {

using Clock = std::chrono::steady_clock;

const char* status_name(SolveStatus s) {
  switch (s) {
  case SolveStatus::Converged: return "converged";
  case SolveStatus::NotConverged: return "not_converged";
  case SolveStatus::Diverged: return "diverged";
  }
  return "unknown";
}

const char* status_name(NewtonStatus s) {
  switch (s) {
  case NewtonStatus::Converged: return "converged";
  case NewtonStatus::MaxIterations: return "max_iterations";
  case NewtonStatus::Diverged: return "diverged";
  }
  return "unknown";
}

fs::path resolve_out_dir(const RunConfig& cfg) {
  fs::path dir = cfg.output.dir.empty()
                     ? fs::path("out") / (cfg.preset.empty() ? "run" : cfg.preset)
                     : fs::path(cfg.output.dir);
  if (dir.is_relative()) {
    if (const char* root = std::getenv("MCSOLVE_OUT_DIR"))
      dir = fs::path(root) / dir;
  }
  return dir;
}

json level_json(const LevelReport& lv) {
  return {{"n", lv.n},
          {"m", lv.m},
          {"newton_status", status_name(lv.newton_status)},
          {"newton_iterations", lv.newton_iterations},
          {"step_residuals", lv.step_residuals},
          {"bvp_residual", lv.bvp_residual},
          {"assemble_seconds", lv.assemble_seconds},
          {"newton_seconds", lv.newton_seconds}};
}

void write_csv_row(std::ostream& os, double x, double y, double u) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, y, u);
  os << buf;
}

void write_solution_csv(const fs::path& file, const ScalarField& v) {
  std::ofstream os(file);
  if (!os) fail(ErrorCode::ConfigError, "cannot write " + file.string());
  os << "x,y,u\n";
  for (int k = 0; k < v.grid->size(); ++k) {
    const DomainPoint p = v.grid->point_at(k);
    write_csv_row(os, p.x, p.y, v.values(k));
  }
}

void write_boundary_csv(const fs::path& file, const ScalarField& v) {
  std::ofstream os(file);
  if (!os) fail(ErrorCode::ConfigError, "cannot write " + file.string());
  os << "component,x,y,u\n";
  const Grid& g = *v.grid;
  auto emit = [&](const std::string& name, int k) {
    const DomainPoint p = g.point_at(k);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.x, p.y,
                  v.values(k));
    os << name << ',' << buf;
  };
  if (g.geom.kind == GeometryKind::Rectangle) {
    const auto comps = g.geom.components();
    for (size_t ci = 0; ci < 4; ++ci)
      for (int k : g.edges[ci]) emit(to_string(comps[ci]), k);
    for (int ci = 0; ci < 4; ++ci)
      emit(to_string(static_cast<Corner>(ci)), g.corners[ci]);
    return;
  }
  // Disk: the rim indices live in outer_ring; inner_ring is empty.
  for (int k : g.inner_ring) emit(to_string(Component::InnerRing), k);
  for (int k : g.outer_ring)
    emit(g.geom.kind == GeometryKind::Disk ? to_string(Component::Rim)
                                           : to_string(Component::OuterRing),
         k);
}

void write_json(const fs::path& file, const json& doc) {
  std::ofstream os(file);
  if (!os) fail(ErrorCode::ConfigError, "cannot write " + file.string());
  os << doc.dump(2) << '\n';
}

} // namespace

int check(const RunConfig& cfg, std::ostream& log) {
  const CompatReport rep = check_compatibility(cfg.spec);
  log << cfg.spec.geom.describe() << ", "
      << (cfg.continuation.empty() ? "adaptive" : "continuation") << " solve\n";
  if (rep.flux)
    log << "boundary flux of cos(gamma): " << *rep.flux << "\n";
  if (rep.derived_two_h)
    log << "mean curvature forced by the data: 2H = " << *rep.derived_two_h
        << "\n";
  for (const auto& w : rep.warnings) log << "warning: " << w << "\n";
  for (const auto& e : rep.errors) log << "error: " << e << "\n";
  log << (rep.ok() ? "compatible\n" : "incompatible\n");
  return rep.ok() ? kExitConverged : kExitIncompatible;
}

int run(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const fs::path dir = resolve_out_dir(cfg);
  fs::create_directories(dir);

  json meta{{"config", cfg.raw},
            {"output_dir", dir.string()}};
  if (!cfg.preset.empty()) meta["preset"] = cfg.preset;

  const CompatReport rep = check_compatibility(cfg.spec);
  meta["warnings"] = rep.warnings;
  if (rep.flux) meta["flux"] = *rep.flux;
  if (rep.derived_two_h) meta["derived_two_h"] = *rep.derived_two_h;
  for (const auto& w : rep.warnings) log << "warning: " << w << "\n";

  if (!rep.ok()) {
    meta["status"] = "incompatible";
    meta["errors"] = rep.errors;
    meta["exit_code"] = kExitIncompatible;
    for (const auto& e : rep.errors) log << "error: " << e << "\n";
    if (cfg.output.meta_json) write_json(dir / "meta.json", meta);
    log << "incompatible problem; nothing solved\n";
    return kExitIncompatible;
  }

  const Solution sol = cfg.continuation.empty()
                           ? adaptive_solve(cfg.spec, cfg.solver)
                           : continuation_solve(cfg.spec, cfg.solver,
                                                cfg.continuation);
  const double wall = std::chrono::duration<double>(Clock::now() - t0).count();

  meta["status"] = status_name(sol.status);
  meta["bvp_residual"] = sol.bvp_residual;
  meta["final_n"] = sol.final_n;
  meta["final_m"] = sol.final_m;
  meta["lambda_reached"] = sol.lambda_reached;
  meta["wall_seconds"] = wall;
  meta["levels"] = json::array();
  for (const auto& lv : sol.levels) meta["levels"].push_back(level_json(lv));
  if (!sol.failure_reason.empty()) meta["failure_reason"] = sol.failure_reason;
  for (const auto& w : sol.warnings)
    if (std::find(rep.warnings.begin(), rep.warnings.end(), w) ==
        rep.warnings.end())
      log << "warning: " << w << "\n";

  const int code =
      sol.status == SolveStatus::Converged ? kExitConverged : kExitNotConverged;
  meta["exit_code"] = code;

  if (cfg.output.solution_csv) {
    write_solution_csv(dir / "solution.csv", sol.v);
    meta["solution_csv"] = (dir / "solution.csv").string();
  }
  if (cfg.output.boundary_csv) {
    write_boundary_csv(dir / "boundary.csv", sol.v);
    meta["boundary_csv"] = (dir / "boundary.csv").string();
  }
  if (cfg.output.meta_json) write_json(dir / "meta.json", meta);

  log << status_name(sol.status) << ": n = " << sol.final_n;
  if (cfg.spec.geom.polar()) log << ", m = " << sol.final_m;
  log << ", bvp residual = " << sol.bvp_residual << ", " << wall << " s\n";
  if (!sol.failure_reason.empty()) log << sol.failure_reason << "\n";
  log << "artifacts in " << dir.string() << "\n";
  return code;
}

} // namespace mcs::cli
