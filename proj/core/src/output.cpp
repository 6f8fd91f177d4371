#include "gocoexist/output.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gocoexist/config.hpp"
#include "gocoexist/csv.hpp"
#include "gocoexist/errors.hpp"

namespace gocoexist {

namespace {
const std::string& f(double v, std::string& buf) {
  buf = format_double(v);
  return buf;
}
}  // namespace

std::string trace_csv(const TraceLog& log) {
  std::ostringstream os;
  std::string b;
  os << kTraceHeader << '\n';
  for (std::size_t t = 0; t < log.size(); ++t) {
    const auto& o = log.outcomes[t];
    os << o.slot << ',' << f(o.gamma, b) << ',' << f(o.p_d_w, b) << ',' << f(o.theta, b) << ','
       << f(o.d_tx_s, b) << ',' << f(o.d_comp_s, b) << ',' << f(o.d_tot_s, b) << ',' << o.success << ','
       << f(o.r_d_bps, b) << ',' << f(log.z[t], b) << ',';
    os << (t < log.moving_eff.size() ? format_double(log.moving_eff[t]) : std::string{}) << ',';
    os << (t < log.moving_cost.size() ? format_double(log.moving_cost[t]) : std::string{}) << '\n';
  }
  return os.str();
}

std::string heatmap_csv(const HeatmapData& h) {
  std::ostringstream os;
  std::string b;
  os << "x,y,effectiveness\n";
  for (const auto& c : h.cells) os << f(c.x, b) << ',' << f(c.y, b) << ',' << f(c.effectiveness, b) << '\n';
  return os.str();
}

std::string contours_csv(const HeatmapData& h) {
  std::ostringstream os;
  std::string b;
  os << "threshold,feasible_cell_count,min_cost_in_region\n";
  for (const auto& c : h.contours) os << f(c.threshold, b) << ',' << c.feasible_cells << ',' << f(c.min_cost, b) << '\n';
  return os.str();
}

std::string grid_csv(const GridResult& g) {
  std::ostringstream os;
  std::string b;
  os << "per,p_d_w,d_max_s,theta_th,effectiveness,theta_only,delay_only,cost,cost_se\n";
  for (std::size_t i = 0; i < g.gammas.size(); ++i)
    for (std::size_t j = 0; j < g.powers.size(); ++j)
      for (std::size_t k = 0; k < g.d_maxes.size(); ++k)
        for (std::size_t l = 0; l < g.thetas.size(); ++l) {
          os << f(g.gammas[i], b) << ',' << f(g.powers[j], b) << ',' << f(g.d_maxes[k], b) << ','
             << f(g.thetas[l], b) << ',' << f(g.eff(i, j, k, l), b) << ',' << f(g.theta_eff(i, l), b) << ','
             << f(g.delay_eff(i, j, k), b) << ',' << f(g.cost[j], b) << ',' << f(g.cost_se[j], b) << '\n';
        }
  return os.str();
}

std::string frontier_csv(const std::vector<FrontierRow>& rows) {
  std::ostringstream os;
  std::string b;
  os << "theta_th,omega,effectiveness,cost,cost_se,z_over_t,convergence_slot,"
        "genie_effectiveness,genie_cost,genie_cost_se,genie_minus_approx_se\n";
  for (const auto& r : rows) {
    os << f(r.theta_th, b) << ',' << f(r.omega, b) << ',' << f(r.approx.effectiveness, b) << ','
       << f(r.approx.cost, b) << ',' << f(r.approx.cost_se, b) << ',' << f(r.approx.z_over_t, b) << ','
       << r.approx.convergence_slot << ',';
    if (r.genie) {
      os << f(r.genie->effectiveness, b) << ',' << f(r.genie->cost, b) << ',' << f(r.genie->cost_se, b) << ','
         << f(r.genie_minus_approx_se, b);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
  return os.str();
}

std::string split_csv(const SplitResult& r) {
  std::ostringstream os;
  std::string b;
  os << "fraction,w_g_hz,effectiveness,cost,cost_se,feasible\n";
  for (const auto& row : r.rows)
    os << f(row.fraction, b) << ',' << f(row.w_g_hz, b) << ',' << f(row.effectiveness, b) << ','
       << f(row.cost, b) << ',' << f(row.cost_se, b) << ',' << (row.feasible ? 1 : 0) << '\n';
  return os.str();
}

std::string summary_csv(const std::vector<std::pair<std::string, double>>& metrics) {
  std::ostringstream os;
  std::string b;
  os << "metric,value\n";
  for (const auto& [k, v] : metrics) os << k << ',' << f(v, b) << '\n';
  return os.str();
}

std::vector<std::pair<std::string, double>> summary_metrics(const RunSummary& s) {
  return {{"effectiveness", s.effectiveness},
          {"cost", s.cost},
          {"cost_se", s.cost_se},
          {"mean_rd_bps", s.mean_rd_bps},
          {"rd_max_avg_bps", s.rd_max_avg},
          {"z_final", s.z_final},
          {"z_over_t", s.z_over_t},
          {"convergence_slot", static_cast<double>(s.convergence_slot)},
          {"drift_bound_ok", s.drift_bound_ok ? 1.0 : 0.0},
          {"success_only_bound_violations", static_cast<double>(s.success_only_bound_violations)}};
}

std::string manifest_json(const ScenarioConfig& cfg) {
  using ojson = nlohmann::ordered_json;
  ojson m;
  m["generator"] = "gocoexist";
  m["preset"] = cfg.preset;
  m["figure"] = cfg.figure;
  m["seed"] = cfg.seed;
  ojson notes = ojson::array();
  if (cfg.compute.kind == "synthetic")
    notes.push_back("compute delay: built-in synthetic histogram, not a measurement");
  if (cfg.oracle.kind == "parametric")
    notes.push_back("entropy oracle: synthetic parametric model, not a trained classifier");
  m["synthetic_inputs"] = notes;
  m["config"] = ojson::parse(emit_config(cfg));
  return m.dump(2) + "\n";
}

void write_trace(const TraceLog& log, const std::filesystem::path& dir) {
  write_text_file(dir / "trace.csv", trace_csv(log));
}

void write_heatmap(const HeatmapData& h, const std::filesystem::path& dir, const std::string& stem) {
  write_text_file(dir / ("heatmap_" + stem + ".csv"), heatmap_csv(h));
  write_text_file(dir / ("contours_" + stem + ".csv"), contours_csv(h));
}

void write_manifest(const ScenarioConfig& cfg, const std::filesystem::path& dir) {
  write_text_file(dir / "manifest.json", manifest_json(cfg));
}

TraceLog read_trace(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  std::string header;
  for (std::size_t i = 0; i < t.header.size(); ++i) header += (i ? "," : "") + t.header[i];
  if (header != kTraceHeader) throw ConfigError(path.string(), "not a trace file");
  TraceLog log;
  for (const auto& r : t.rows) {
    GoalOutcome o;
    o.slot = static_cast<std::uint64_t>(parse_double(r[0]));
    o.gamma = parse_double(r[1]);
    o.p_d_w = parse_double(r[2]);
    o.theta = parse_double(r[3]);
    o.d_tx_s = parse_double(r[4]);
    o.d_comp_s = parse_double(r[5]);
    o.d_tot_s = parse_double(r[6]);
    o.success = static_cast<int>(parse_double(r[7]));
    o.r_d_bps = parse_double(r[8]);
    log.outcomes.push_back(o);
    log.z.push_back(parse_double(r[9]));
    log.moving_eff.push_back(parse_double(r[10]));
    log.moving_cost.push_back(parse_double(r[11]));
  }
  return log;
}

ScenarioConfig read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open manifest");
  std::ostringstream ss;
  ss << in.rdbuf();
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error&) {
    throw ConfigError(path.string(), "manifest is not valid JSON");
  }
  if (!m.contains("config")) throw ConfigError(path.string(), "manifest has no config");
  return parse_config_text(m["config"].dump(), path.string());
}

}  // namespace gocoexist
