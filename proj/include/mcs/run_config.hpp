#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcs/solver.hpp"

// Configuration loading, preset expansion, and run orchestration for the
// mcsolve command-line tool. A run is described by one JSON document:
//
//   {
//     "description": "optional free text",
//     "geometry":  {"kind": "rectangle", "x": [-1,1], "y": [-1,1]}
//                | {"kind": "disk", "radius": 1.0}
//                | {"kind": "annulus", "inner": 1.0, "outer": 2.0},
//     "pde":       {"family": "minimal"}
//                | {"family": "cmc", "two_h": 1.0}
//                | {"family": "capillary", "kappa": 1.0},
//     "boundary":  per-component blocks keyed "left"/"right"/"bottom"/"top"
//                  (rectangle), "rim" (disk), "inner"/"outer" (annulus), or
//                  a single "all" block; each block is
//                  {"dirichlet": "<expr>"} or {"contact_angle": "<expr>"},
//     "pin":       {"height": 1.0} (optional; contact-angle data only),
//     "solver":    optional overrides of the solver defaults,
//     "output":    {"dir": "...", "solution_csv": true, "meta_json": true,
//                   "boundary_csv": false}
//   }
//
// Boundary expressions use x,y on rectangle edges and theta on circular
// components; initial-guess expressions may use x, y, r, theta.
namespace mcs::cli {

struct OutputConfig {
  std::string dir; // empty: "out/<preset-or-run>" under MCSOLVE_OUT_DIR
  bool solution_csv = true;
  bool meta_json = true;
  bool boundary_csv = false;
};

struct RunConfig {
  nlohmann::json raw; // fully-merged document, echoed into meta.json
  std::string preset; // set when the config came from a preset
  std::string description;
  ProblemSpec spec;
  SolverConfig solver;
  std::vector<double> continuation; // empty: plain adaptive solve
  OutputConfig output;
};

// Dotted-path overrides, e.g. "--solver.n_init=40" or "pde.two_h=0.5".
// The value is parsed as JSON when possible and kept as a string otherwise.
void apply_overrides(nlohmann::json& doc,
                     const std::vector<std::string>& overrides);

RunConfig load_config(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path,
                           const std::vector<std::string>& overrides = {});

std::vector<std::string> preset_names();
nlohmann::json preset_json(const std::string& name);
RunConfig preset_config(const std::string& name,
                        const std::vector<std::string>& overrides = {});

// Exit codes shared by the library entry points and the executable.
inline constexpr int kExitConverged = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIncompatible = 3;
inline constexpr int kExitNotConverged = 4;

// Compatibility screening only: prints the report, returns 0 or 3.
int check(const RunConfig& cfg, std::ostream& log);

// Full pipeline: screening, solve (adaptive or continuation), artifacts
// (solution.csv / meta.json / boundary.csv) in the output directory.
// Returns an exit code; meta.json is written for solver failures too.
int run(const RunConfig& cfg, std::ostream& log);

} // namespace mcs::cli
