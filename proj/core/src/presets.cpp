#include "gocoexist/presets.hpp"

#include "gocoexist/errors.hpp"

namespace gocoexist {

namespace {

std::vector<double> evenly_spaced(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = hi;
  return v;
}

const std::vector<double> kThetaPanels{-0.8, -0.5, -0.4};

ScenarioConfig base(const std::string& name, const std::string& figure) {
  ScenarioConfig c;
  c.preset = name;
  c.figure = figure;
  return c;
}

ScenarioConfig grid_base(const std::string& name, const std::string& figure) {
  ScenarioConfig c = base(name, figure);
  c.mode = RunMode::grid_sweep;
  return c;
}

ScenarioConfig frontier_base(const std::string& name, const std::string& figure, double bandwidth) {
  ScenarioConfig c = base(name, figure);
  c.radio.bandwidth_hz = bandwidth;
  c.requirements = {-0.5, 0.045, 0.82};
  c.frontier.thetas = kThetaPanels;
  return c;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"default", "fig6",   "fig7",   "fig8",  "fig9",
                                              "fig10a",  "fig10b", "fig11", "fig12", "fig13"};
  return names;
}

ScenarioConfig make_preset(const std::string& name) {
  if (name == "default") return base("default", "");

  if (name == "fig6") {
    // Goal-value-only effectiveness versus PER.
    ScenarioConfig c = grid_base(name, "Fig. 6");
    c.sweep.power_grid_w = {0.2};
    c.sweep.d_max_grid_s = {0.05};
    c.sweep.theta_grid = kThetaPanels;
    return c;
  }
  if (name == "fig7") {
    // Delay-only effectiveness versus goal cost, D_max = 50 ms.
    ScenarioConfig c = grid_base(name, "Fig. 7");
    c.requirements.d_max_s = 0.05;
    c.sweep.power_grid_w = evenly_spaced(0.0, 0.2, 21);
    c.sweep.d_max_grid_s = {0.05};
    c.sweep.theta_grid = {-0.4};
    c.sweep.y_axis = "cost";
    return c;
  }
  if (name == "fig8") {
    ScenarioConfig c = grid_base(name, "Fig. 8");
    c.sweep.power_grid_w = {0.2};
    c.sweep.d_max_grid_s = evenly_spaced(0.030, 0.060, 13);
    c.sweep.theta_grid = kThetaPanels;
    return c;
  }
  if (name == "fig9" || name == "fig11") {
    ScenarioConfig c = grid_base(name, name == "fig9" ? "Fig. 9" : "Fig. 11");
    c.sweep.power_grid_w = evenly_spaced(0.0, 0.2, 41);
    c.sweep.d_max_grid_s = {0.045};
    c.sweep.theta_grid = kThetaPanels;
    c.sweep.contour_thresholds = {0.8};
    c.sweep.y_axis = "cost";
    return c;
  }
  if (name == "fig10a") return frontier_base(name, "Fig. 10a", 1e9);
  if (name == "fig10b") return frontier_base(name, "Fig. 10b", 500e6);
  if (name == "fig12") {
    ScenarioConfig c = base(name, "Fig. 12");
    c.slots = 30000;
    c.requirements = {-0.4, 0.045, 0.8};
    c.events = {{10000, EventKind::set_theta_th, -0.5}, {20000, EventKind::set_e_th, 0.85}};
    return c;
  }
  if (name == "fig13") {
    ScenarioConfig c = base(name, "Fig. 13");
    c.requirements = {-0.5, 0.05, 0.8};
    c.events = {{10000, EventKind::set_compute_offset, 0.005}, {30000, EventKind::set_compute_offset, 0.007}};
    return c;
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

}  // namespace gocoexist
