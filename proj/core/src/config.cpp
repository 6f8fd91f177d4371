#include "gocoexist/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gocoexist/errors.hpp"
#include "gocoexist/presets.hpp"

namespace gocoexist {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Reads fields from one JSON object, remembering which keys were consumed so
// leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw ConfigError(prefix_.empty() ? "<root>" : prefix_, "expected an object");
  }

  std::string key(const std::string& name) const { return prefix_.empty() ? name : prefix_ + "." + name; }

  const json* find(const std::string& name) {
    seen_.insert(name);
    auto it = obj_.find(name);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const std::string& name, double& out) {
    if (const json* v = find(name)) out = as_number(*v, key(name));
  }

  void number_or_inf(const std::string& name, double& out) {
    if (const json* v = find(name)) {
      if (v->is_string() && v->get<std::string>() == "inf") {
        out = std::numeric_limits<double>::infinity();
      } else {
        out = as_number(*v, key(name));
      }
    }
  }

  template <typename Int>
  void integer(const std::string& name, Int& out) {
    if (const json* v = find(name)) {
      if (!v->is_number_integer()) throw ConfigError(key(name), "expected an integer");
      if (v->is_number_unsigned()) {
        out = static_cast<Int>(v->get<std::uint64_t>());
      } else {
        const auto x = v->get<std::int64_t>();
        if (x < 0 && std::is_unsigned_v<Int>) throw ConfigError(key(name), "must be >= 0");
        out = static_cast<Int>(x);
      }
    }
  }

  void boolean(const std::string& name, bool& out) {
    if (const json* v = find(name)) {
      if (!v->is_boolean()) throw ConfigError(key(name), "expected true or false");
      out = v->get<bool>();
    }
  }

  void string(const std::string& name, std::string& out) {
    if (const json* v = find(name)) {
      if (!v->is_string()) throw ConfigError(key(name), "expected a string");
      out = v->get<std::string>();
    }
  }

  void numbers(const std::string& name, std::vector<double>& out) {
    if (const json* v = find(name)) {
      if (!v->is_array()) throw ConfigError(key(name), "expected an array of numbers");
      out.clear();
      for (const auto& x : *v) out.push_back(as_number(x, key(name)));
    }
  }

  void point(const std::string& name, Point2& out) {
    if (const json* v = find(name)) {
      if (!v->is_array() || v->size() != 2) throw ConfigError(key(name), "expected [x, y]");
      out = {as_number((*v)[0], key(name)), as_number((*v)[1], key(name))};
    }
  }

  std::optional<Section> child(const std::string& name) {
    if (const json* v = find(name)) return Section(*v, key(name));
    return std::nullopt;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(key(it.key()), "unknown key");
  }

  static double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

void read_geometry(Section s, Geometry& g) {
  s.point("ue_g", g.ue_g);
  s.point("ap_g", g.ap_g);
  s.point("ue_d", g.ue_d);
  s.point("ap_d", g.ap_d);
  s.integer("antennas_g", g.antennas_g);
  s.integer("antennas_d", g.antennas_d);
  s.number("spacing_wavelengths", g.spacing_wavelengths);
  s.number("carrier_hz", g.carrier_hz);
  s.finish();
}

void read_fading(Section s, FadingParams& f) {
  s.number_or_inf("rician_k", f.rician_k);
  s.number("path_loss_exponent", f.path_loss_exponent);
  s.number("path_loss_ref_m", f.path_loss_ref_m);
  s.finish();
}

void read_radio(Section s, RadioConfig& r) {
  s.number("bandwidth_hz", r.bandwidth_hz);
  s.number("n0_dbm_hz", r.n0_dbm_hz);
  s.number("noise_figure_db", r.noise_figure_db);
  s.number("p_g_w", r.p_g_w);
  s.number("p_d_max_w", r.p_d_max_w);
  s.integer("p_d_points", r.p_d_points);
  s.numbers("per_grid", r.per_grid);
  s.number("blocklength", r.blocklength);
  s.number("packet_bits", r.packet_bits);
  s.number("pattern_bits", r.pattern_bits);
  s.integer("batch_size", r.batch_size);
  s.finish();
}

void read_compute(Section s, ComputeConfig& c) {
  s.string("kind", c.kind);
  if (const json* bins = s.find("bins")) {
    if (!bins->is_array()) throw ConfigError(s.key("bins"), "expected [[low_s, high_s, prob], ...]");
    c.bins.clear();
    for (const auto& b : *bins) {
      if (!b.is_array() || b.size() != 3) throw ConfigError(s.key("bins"), "each bin is [low_s, high_s, prob]");
      c.bins.push_back({Section::as_number(b[0], s.key("bins")), Section::as_number(b[1], s.key("bins")),
                        Section::as_number(b[2], s.key("bins"))});
    }
  }
  s.string("histogram_path", c.histogram_path);
  if (auto p = s.child("parametric")) {
    std::string family = to_string(c.parametric.family);
    p->string("family", family);
    c.parametric.family = delay_family_from_string(family);
    p->number("a", c.parametric.a);
    p->number("b", c.parametric.b);
    p->finish();
  }
  s.number("offset_s", c.offset_s);
  s.finish();
}

void read_oracle(Section s, OracleConfig& o) {
  s.string("kind", o.kind);
  s.number("h_min", o.params.h_min);
  s.integer("labels", o.params.labels);
  s.number("distortion_scale", o.params.distortion_scale);
  s.number("distortion_exponent", o.params.distortion_exponent);
  s.number("noise_sd_nats", o.params.noise_sd_nats);
  s.number("truncation_sd", o.params.truncation_sd);
  s.string("table_path", o.table_path);
  s.finish();
}

void read_requirements(Section s, GoalRequirements& r) {
  s.number("theta_th", r.theta_th);
  s.number("d_max_s", r.d_max_s);
  s.number("e_th", r.e_th);
  s.finish();
}

void read_solver(Section s, SolverSettings& v) {
  s.number("omega", v.omega);
  s.boolean("fixed", v.fixed);
  s.boolean("fix_power", v.fix_power);
  s.number("fixed_gamma", v.fixed_gamma);
  s.number("fixed_p_d", v.fixed_p_d);
  s.boolean("online_reestimation", v.online_reestimation);
  s.integer("validation_batches", v.validation_batches);
  s.finish();
}

void read_events(const json& arr, std::vector<ScenarioEvent>& events) {
  if (!arr.is_array()) throw ConfigError("events", "expected an array");
  events.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Section s(arr[i], "events[" + std::to_string(i) + "]");
    ScenarioEvent e;
    std::string kind;
    s.integer("slot", e.slot);
    s.string("kind", kind);
    if (kind.empty()) throw ConfigError(s.key("kind"), "required");
    e.kind = event_kind_from_string(kind);
    if (!s.find("value")) throw ConfigError(s.key("value"), "required");
    s.number("value", e.value);
    s.finish();
    events.push_back(e);
  }
}

void read_sweep(Section s, SweepConfig& w) {
  s.numbers("power_grid_w", w.power_grid_w);
  s.numbers("d_max_grid_s", w.d_max_grid_s);
  s.numbers("theta_grid", w.theta_grid);
  s.numbers("contour_thresholds", w.contour_thresholds);
  s.string("y_axis", w.y_axis);
  s.finish();
}

void read_split(Section s, SplitConfig& c) {
  s.numbers("fractions", c.fractions);
  s.finish();
}

void read_frontier(Section s, FrontierConfig& f) {
  s.numbers("omegas", f.omegas);
  s.numbers("thetas", f.thetas);
  s.boolean("include_genie", f.include_genie);
  s.finish();
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ojson number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? ojson("inf") : ojson("-inf");
  return ojson(v);
}

ojson point(Point2 p) { return ojson::array({p.x, p.y}); }

}  // namespace

ScenarioConfig parse_config_text(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw ConfigError(source, "parse error at line " + std::to_string(line) + ", column " +
                                  std::to_string(col));
  }

  Section root(doc, "");
  int version = 0;
  root.integer("schema_version", version);
  if (version != kSchemaVersion)
    throw ConfigError("schema_version", "must be " + std::to_string(kSchemaVersion));

  std::string preset = "default";
  root.string("preset", preset);
  ScenarioConfig cfg = make_preset(preset);

  root.string("figure", cfg.figure);
  if (const json* m = root.find("mode")) {
    if (!m->is_string()) throw ConfigError("mode", "expected a string");
    cfg.mode = run_mode_from_string(m->get<std::string>());
  }
  root.integer("slots", cfg.slots);
  if (const json* s = root.find("seed")) {
    if (s->is_string()) {
      cfg.seed = parse_seed(s->get<std::string>(), "seed");
    } else {
      if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<std::int64_t>() >= 0))
        throw ConfigError("seed", "expected an unsigned integer");
      cfg.seed = s->get<std::uint64_t>();
    }
  }
  root.integer("window", cfg.window);
  root.integer("se_batches", cfg.se_batches);
  root.integer("threads", cfg.threads);
  if (auto s = root.child("geometry")) read_geometry(*s, cfg.geometry);
  if (auto s = root.child("fading")) read_fading(*s, cfg.fading);
  if (auto s = root.child("radio")) read_radio(*s, cfg.radio);
  if (auto s = root.child("compute")) read_compute(*s, cfg.compute);
  if (auto s = root.child("oracle")) read_oracle(*s, cfg.oracle);
  if (auto s = root.child("requirements")) read_requirements(*s, cfg.requirements);
  if (auto s = root.child("solver")) read_solver(*s, cfg.solver);
  if (const json* e = root.find("events")) read_events(*e, cfg.events);
  if (auto s = root.child("sweep")) read_sweep(*s, cfg.sweep);
  if (auto s = root.child("split")) read_split(*s, cfg.split);
  if (auto s = root.child("frontier")) read_frontier(*s, cfg.frontier);
  root.finish();

  cfg.validate();
  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

std::string emit_config(const ScenarioConfig& c) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["preset"] = c.preset;
  j["figure"] = c.figure;
  j["mode"] = to_string(c.mode);
  j["slots"] = c.slots;
  j["seed"] = c.seed;
  j["window"] = c.window;
  j["se_batches"] = c.se_batches;
  j["threads"] = c.threads;

  j["geometry"] = {{"ue_g", point(c.geometry.ue_g)},
                   {"ap_g", point(c.geometry.ap_g)},
                   {"ue_d", point(c.geometry.ue_d)},
                   {"ap_d", point(c.geometry.ap_d)},
                   {"antennas_g", c.geometry.antennas_g},
                   {"antennas_d", c.geometry.antennas_d},
                   {"spacing_wavelengths", c.geometry.spacing_wavelengths},
                   {"carrier_hz", c.geometry.carrier_hz}};
  j["fading"] = {{"rician_k", number_or_inf(c.fading.rician_k)},
                 {"path_loss_exponent", c.fading.path_loss_exponent},
                 {"path_loss_ref_m", c.fading.path_loss_ref_m}};
  j["radio"] = {{"bandwidth_hz", c.radio.bandwidth_hz},
                {"n0_dbm_hz", c.radio.n0_dbm_hz},
                {"noise_figure_db", c.radio.noise_figure_db},
                {"p_g_w", c.radio.p_g_w},
                {"p_d_max_w", c.radio.p_d_max_w},
                {"p_d_points", c.radio.p_d_points},
                {"per_grid", c.radio.per_grid},
                {"blocklength", c.radio.blocklength},
                {"packet_bits", c.radio.packet_bits},
                {"pattern_bits", c.radio.pattern_bits},
                {"batch_size", c.radio.batch_size}};

  ojson bins = ojson::array();
  for (const auto& b : c.compute.bins) bins.push_back({b.low_s, b.high_s, b.prob});
  j["compute"] = {{"kind", c.compute.kind},
                  {"bins", bins},
                  {"histogram_path", c.compute.histogram_path},
                  {"parametric",
                   {{"family", to_string(c.compute.parametric.family)},
                    {"a", c.compute.parametric.a},
                    {"b", c.compute.parametric.b}}},
                  {"offset_s", c.compute.offset_s}};
  const auto& op = c.oracle.params;
  j["oracle"] = {{"kind", c.oracle.kind},
                 {"h_min", op.h_min},
                 {"labels", op.labels},
                 {"distortion_scale", op.distortion_scale},
                 {"distortion_exponent", op.distortion_exponent},
                 {"noise_sd_nats", op.noise_sd_nats},
                 {"truncation_sd", op.truncation_sd},
                 {"table_path", c.oracle.table_path}};
  j["requirements"] = {{"theta_th", c.requirements.theta_th},
                       {"d_max_s", c.requirements.d_max_s},
                       {"e_th", c.requirements.e_th}};
  j["solver"] = {{"omega", c.solver.omega},
                 {"fixed", c.solver.fixed},
                 {"fix_power", c.solver.fix_power},
                 {"fixed_gamma", c.solver.fixed_gamma},
                 {"fixed_p_d", c.solver.fixed_p_d},
                 {"online_reestimation", c.solver.online_reestimation},
                 {"validation_batches", c.solver.validation_batches}};
  ojson events = ojson::array();
  for (const auto& e : c.events) events.push_back({{"slot", e.slot}, {"kind", to_string(e.kind)}, {"value", e.value}});
  j["events"] = events;
  j["sweep"] = {{"power_grid_w", c.sweep.power_grid_w},
                {"d_max_grid_s", c.sweep.d_max_grid_s},
                {"theta_grid", c.sweep.theta_grid},
                {"contour_thresholds", c.sweep.contour_thresholds},
                {"y_axis", c.sweep.y_axis}};
  j["split"] = {{"fractions", c.split.fractions}};
  j["frontier"] = {{"omegas", c.frontier.omegas},
                   {"thetas", c.frontier.thetas},
                   {"include_genie", c.frontier.include_genie}};
  return j.dump(2) + "\n";
}

std::uint64_t parse_seed(const std::string& text, const std::string& key) {
  std::uint64_t v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != last)
    throw ConfigError(key, "not an unsigned 64-bit integer: '" + text + "'");
  return v;
}

std::optional<std::uint64_t> seed_from_env() {
  const char* s = std::getenv("GOCOEXIST_SEED");
  if (!s) return std::nullopt;
  return parse_seed(s, "GOCOEXIST_SEED");
}

}  // namespace gocoexist
