// Command-line front end: solve prescribed-mean-curvature graph problems
// described by JSON configs or built-in presets.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcs/run_config.hpp"

namespace {

// Leftover tokens of the form [--]path.to.field=value become config
// overrides; anything else is a usage error.
std::vector<std::string> harvest_overrides(CLI::App& cmd) {
  std::vector<std::string> overrides;
  for (const std::string& tok : cmd.remaining()) {
    if (tok.find('=') == std::string::npos)
      mcs::fail(mcs::ErrorCode::ConfigError,
                "unrecognized argument '" + tok +
                    "' (overrides look like --solver.n_init=40)");
    overrides.push_back(tok);
  }
  return overrides;
}

int dispatch(const mcs::cli::RunConfig& cfg, bool print_config,
             bool check_only) {
  if (print_config) {
    std::cout << cfg.raw.dump(2) << "\n";
    return mcs::cli::kExitConverged;
  }
  if (check_only) return mcs::cli::check(cfg, std::cout);
  return mcs::cli::run(cfg, std::cout);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for minimal, constant-mean-curvature, and "
               "capillary graph equations on rectangles, disks, and annuli"};
  app.require_subcommand(1);

  std::string config_path, preset_name;
  bool print_config = false;

  CLI::App* run = app.add_subcommand(
      "run", "Solve the problem described by a JSON config file");
  run->add_option("config", config_path, "path to the config file")
      ->required();
  run->add_flag("--print-config", print_config,
                "print the merged config instead of solving");
  run->allow_extras();

  CLI::App* preset = app.add_subcommand(
      "preset", "Solve a built-in example problem by name");
  preset->add_option("name", preset_name, "preset name (see list-presets)")
      ->required();
  preset->add_flag("--print-config", print_config,
                   "print the merged config instead of solving");
  preset->allow_extras();

  CLI::App* check = app.add_subcommand(
      "check", "Screen a config for solvability without solving");
  check->add_option("config", config_path, "path to the config file")
      ->required();
  check->allow_extras();

  CLI::App* list =
      app.add_subcommand("list-presets", "List the built-in examples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const std::string& name : mcs::cli::preset_names()) {
        const nlohmann::json doc = mcs::cli::preset_json(name);
        std::cout << name << "\n    " << doc.value("description", "") << "\n";
      }
      return mcs::cli::kExitConverged;
    }
    if (run->parsed())
      return dispatch(
          mcs::cli::load_config_file(config_path, harvest_overrides(*run)),
          print_config, false);
    if (preset->parsed())
      return dispatch(
          mcs::cli::preset_config(preset_name, harvest_overrides(*preset)),
          print_config, false);
    return dispatch(
        mcs::cli::load_config_file(config_path, harvest_overrides(*check)),
        false, true);
  } catch (const mcs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == mcs::ErrorCode::Incompatible
               ? mcs::cli::kExitIncompatible
               : mcs::cli::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mcs::cli::kExitConfigError;
  }
}
