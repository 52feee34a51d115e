#include "mcs/run_config.hpp"

#include <utility>

namespace mcs::cli {

namespace {

using nlohmann::json;

json square() {
  return {{"kind", "rectangle"}, {"x", {-1.0, 1.0}}, {"y", {-1.0, 1.0}}};
}
json disk() { return {{"kind", "disk"}, {"radius", 1.0}}; }
json ring() { return {{"kind", "annulus"}, {"inner", 1.0}, {"outer", 2.0}}; }

json dir(const json& g) { return {{"dirichlet", g}}; }
json ang(const json& gamma) { return {{"contact_angle", gamma}}; }

// Built once; order is the listing order of `mcsolve list-presets`.
const std::vector<std::pair<std::string, json>>& table() {
  static const std::vector<std::pair<std::string, json>> t = [] {
    std::vector<std::pair<std::string, json>> v;
    auto add = [&](const char* name, const char* description, json geometry,
                   json pde, json boundary, json extra = json::object()) {
      json doc{{"description", description},
               {"geometry", std::move(geometry)},
               {"pde", std::move(pde)},
               {"boundary", std::move(boundary)}};
      for (auto& [k, val] : extra.items()) doc[k] = val;
      v.emplace_back(name, std::move(doc));
    };

    add("scherk",
        "Minimal surface over the unit square whose exact height is "
        "log(cos(x)/cos(y)); a closed-form benchmark for the solver.",
        square(), {{"family", "minimal"}},
        {{"all", dir("log(cos(x)/cos(y))")}});

    add("square-plateau",
        "Minimal surface spanning an oscillatory wire frame over the unit "
        "square.",
        square(), {{"family", "minimal"}},
        {{"all", dir("0.1*sin(4*pi*x)^2 + 0.1*sin(4*pi*y)")}});

    add("square-plateau-large",
        "Same wire frame with the oscillation amplitude pushed near the "
        "limit of convergence; ramps the boundary data up in 14 steps.",
        square(), {{"family", "minimal"}},
        {{"all", dir("0.13*sin(4*pi*x)^2 + 0.1*sin(4*pi*y)")}},
        {{"solver", {{"continuation_steps", 14}}}});

    add("disk-plateau",
        "Minimal surface over the unit disk with a four-lobed rim height.",
        disk(), {{"family", "minimal"}}, {{"rim", dir("0.1*sin(2*theta)^2")}});

    add("annulus-plateau",
        "Minimal surface over the annulus 1 < r < 2 with oscillatory rim "
        "heights.",
        ring(), {{"family", "minimal"}},
        {{"inner", dir("0.5 + 0.1*sin(2*theta)^2")},
         {"outer", dir("0.5 - 0.1*cos(2*theta)^2")}});

    add("catenoid",
        "Catenoid-like minimal graph over the annulus 1 < r < 2, held at "
        "height 1.28792 on the inner rim and 0 on the outer; the inner "
        "height sits close to the gradient blow-up threshold.",
        ring(), {{"family", "minimal"}},
        {{"inner", dir(1.28792)}, {"outer", dir(0.0)}});

    add("cmc-rectangle",
        "Constant-mean-curvature surface (2H = 1) over [-1,1] x [-2,2] with "
        "an oscillatory Dirichlet frame.",
        {{"kind", "rectangle"}, {"x", {-1.0, 1.0}}, {"y", {-2.0, 2.0}}},
        {{"family", "cmc"}, {"two_h", 1.0}},
        {{"all", dir("0.25*cos(pi*x/2)*sin(2*pi*x)^2 - 0.15*y^2")}});

    add("cmc-disk",
        "Constant-mean-curvature surface (2H = 1/2) over the unit disk with "
        "a four-lobed rim height.",
        disk(), {{"family", "cmc"}, {"two_h", 0.5}},
        {{"rim", dir("0.1*sin(2*theta)^2")}});

    add("cmc-annulus",
        "Constant-mean-curvature surface (2H = 1/2) over the annulus "
        "1 < r < 2 with oscillatory rim heights.",
        ring(), {{"family", "cmc"}, {"two_h", 0.5}},
        {{"inner", dir("0.5 + 0.1*sin(2*theta)^2")},
         {"outer", dir("0.5 - 0.1*cos(2*theta)^2")}});

    add("capillary-dirichlet-square",
        "Capillary surface (kappa = 1) over the unit square with prescribed "
        "boundary heights.",
        square(), {{"family", "capillary"}, {"kappa", 1.0}},
        {{"all", dir("0.1*sin(2*pi*x)^2 + 0.2*sin(pi*y) + 1")}});

    add("capillary-dirichlet-disk",
        "Capillary surface (kappa = 1) over the unit disk with prescribed "
        "rim heights.",
        disk(), {{"family", "capillary"}, {"kappa", 1.0}},
        {{"rim", dir("0.1*sin(3*theta)^2 + 0.1*cos(theta) + 1/2")}});

    add("capillary-dirichlet-annulus",
        "Capillary surface (kappa = 1) over the annulus 1 < r < 2 with "
        "prescribed rim heights.",
        ring(), {{"family", "capillary"}, {"kappa", 1.0}},
        {{"inner", dir("0.5 + 0.1*sin(3*theta)^2")},
         {"outer", dir("0.5 - 0.1*cos(2*theta)^2 + 0.1*sin(theta)")}});

    add("corner-capillary",
        "Capillary surface (kappa = 1) over the unit square with uniform "
        "contact angle pi/4 + 0.035, just above the corner angle below "
        "which no solution exists; gradients grow large at the corners.",
        square(), {{"family", "capillary"}, {"kappa", 1.0}},
        {{"all", ang("pi/4 + 0.035")}},
        {{"solver", {{"n_init", 50}, {"guess", "one"}}}});

    add("corner-capillary-tall",
        "The corner-capillary problem stretched to [-1,1] x [-10,10]. "
        "Resolving the corner layers on the long domain takes many minutes.",
        {{"kind", "rectangle"}, {"x", {-1.0, 1.0}}, {"y", {-10.0, 10.0}}},
        {{"family", "capillary"}, {"kappa", 1.0}},
        {{"all", ang("pi/4 + 0.035")}},
        {{"solver", {{"n_init", 50}, {"guess", "one"}}}});

    add("minimal-capillary-disk",
        "Minimal surface over the unit disk meeting the bounding cylinder "
        "at a wildly oscillating contact angle with zero mean flux; the "
        "height is pinned to 1 at theta = 0 on the rim.",
        disk(), {{"family", "minimal"}},
        {{"rim", ang("pi/2 + sin(16*theta)*cos(theta) + 0.2*cos(3*theta) + "
                     "0.05*cos(theta)")}},
        {{"pin", {{"height", 1.0}}},
         {"solver", {{"guess", "one"}}}});

    add("minimal-capillary-annulus",
        "Minimal surface over the annulus 1 < r < 2 with gently oscillating "
        "contact angles on both rims; pinned to height 1 at theta = 0 on "
        "the outer rim. A zero start converges more readily than one at "
        "the pinned height.",
        ring(), {{"family", "minimal"}},
        {{"inner", ang("pi/2 + 0.1*sin(2*theta)")},
         {"outer", ang("pi/2 + 0.01*cos(4*theta)")}},
        {{"pin", {{"height", 1.0}}},
         {"solver", {{"guess", "zero"}}}});

    add("zero-g-disk",
        "Zero-gravity capillary surface over the unit disk: constant mean "
        "curvature with contact-angle data. The data force 2H ~ 0.1987 and "
        "the prescribed value is replaced by the derived one.",
        disk(), {{"family", "cmc"}, {"two_h", 0.1987}},
        {{"rim", ang("pi/2 - 0.1 + 0.2*sin(4*theta)*cos(theta)")}},
        {{"pin", {{"height", 1.0}}},
         {"solver", {{"guess", "one"}}}});

    add("zero-g-annulus",
        "Zero-gravity capillary surface over the annulus 1 < r < 2; the "
        "contact angles force 2H ~ 0.0666. A zero start converges more "
        "readily than one at the pinned height.",
        ring(), {{"family", "cmc"}, {"two_h", 0.0666}},
        {{"inner", ang("pi/2 + 0.1*sin(2*theta)")},
         {"outer", ang("pi/2 - 0.05 + 0.01*cos(4*theta)")}},
        {{"pin", {{"height", 1.0}}},
         {"solver", {{"guess", "zero"}}}});

    add("capillary-capdata-disk",
        "Capillary surface (kappa = 1) over the unit disk with a strongly "
        "oscillating contact angle.",
        disk(), {{"family", "capillary"}, {"kappa", 1.0}},
        {{"rim", ang("pi/2 + 0.3 + 0.75*sin(6*theta)")}});

    add("capillary-capdata-annulus",
        "Capillary surface (kappa = 1) over the annulus 1 < r < 2 with "
        "six-lobed contact angles on both rims.",
        ring(), {{"family", "capillary"}, {"kappa", 1.0}},
        {{"inner", ang("pi/3 + 0.2*sin(6*theta)")},
         {"outer", ang("pi/3 + 0.2*cos(6*theta)")}});

    add("mixed-annulus-minimal",
        "Minimal surface over the annulus 1 < r < 2 with a contact angle "
        "on the inner rim and a prescribed height on the outer rim.",
        ring(), {{"family", "minimal"}},
        {{"inner", ang("pi/3 + 0.75*sin(6*theta)")},
         {"outer", dir("1/2 - 0.1*cos(2*theta)^2")}});

    add("mixed-annulus-cmc",
        "Constant-mean-curvature surface (2H = -0.85) over the annulus "
        "1 < r < 2 with a contact angle on the inner rim and a prescribed "
        "height on the outer rim.",
        ring(), {{"family", "cmc"}, {"two_h", -0.85}},
        {{"inner", ang("pi/2 + 0.2*sin(4*theta)")},
         {"outer", dir("1/2 - 0.1*cos(2*theta)^2")}});

    add("mixed-annulus-capillary",
        "Capillary surface (kappa = 1) over the annulus 1 < r < 2 with a "
        "contact angle on the inner rim and a prescribed height on the "
        "outer rim.",
        ring(), {{"family", "capillary"}, {"kappa", 1.0}},
        {{"inner", ang("pi/3 + 0.2*sin(6*theta)")},
         {"outer", dir("1/2 - 0.1*cos(theta)^2")}});

    add("unstable-rectangle",
        "Minimal surface over the unit square with contact-angle data on "
        "all four sides. Surfaces of this kind lack a stability theory on "
        "rectangles, so a warning is emitted and the work is capped; the "
        "collocation equations do solve here, but expect the surface shape "
        "to settle only slowly under refinement.",
        square(), {{"family", "minimal"}},
        {{"bottom", ang("pi/2 + 0.2*sin(pi*x)")},
         {"top", ang("pi/2 + 0.2*sin(pi*x)")},
         {"left", ang("pi/2")},
         {"right", ang("pi/2")}},
        {{"pin", {{"height", 1.0}}},
         {"solver",
          {{"n_init", 24}, {"max_refinements", 1}, {"max_newton_iters", 15}}}});

    return v;
  }();
  return t;
}

} // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, doc] : table()) names.push_back(name);
  return names;
}

json preset_json(const std::string& name) {
  for (const auto& [n, doc] : table())
    if (n == name) return doc;
  std::string msg = "unknown preset '" + name + "'; available:";
  for (const auto& [n, doc] : table()) msg += " " + n;
  fail(ErrorCode::ConfigError, msg);
}

} // namespace mcs::cli
