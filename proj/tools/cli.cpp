#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gocoexist/config.hpp"
#include "gocoexist/csv.hpp"
#include "gocoexist/errors.hpp"
#include "gocoexist/output.hpp"
#include "gocoexist/presets.hpp"
#include "gocoexist/sim_engine.hpp"

namespace gocoexist {

namespace {

struct Options {
  std::string config_path;
  std::string preset;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string seed_text;
  std::vector<double> omegas;
  bool quiet = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ScenarioConfig resolve(const Options& o) {
  if (o.config_path.empty() && o.preset.empty()) throw UsageError("one of --config or --preset is required");
  if (!o.config_path.empty() && !o.preset.empty()) throw UsageError("--config and --preset are mutually exclusive");
  ScenarioConfig cfg = o.config_path.empty() ? make_preset(o.preset) : parse_config(o.config_path);
  if (auto env = seed_from_env()) cfg.seed = *env;
  if (!o.seed_text.empty()) cfg.seed = parse_seed(o.seed_text, "--seed");
  cfg.validate();
  return cfg;
}

std::filesystem::path prepare_out(const Options& o) {
  std::filesystem::path dir(o.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void note(const Options& o, std::ostream& out, const std::string& msg) {
  if (!o.quiet) out << msg << '\n';
}

int cmd_run(const Options& o, std::ostream& out) {
  ScenarioConfig cfg = resolve(o);
  if (cfg.mode != RunMode::genie) cfg.mode = RunMode::adaptive;
  if (!o.omegas.empty()) {
    if (o.omegas.size() != 1) throw UsageError("run takes a single --omega value");
    cfg.solver.omega = o.omegas.front();
  }
  const auto dir = prepare_out(o);
  const TraceLog log = run_adaptive(cfg);
  const RunSummary s = summarize(log, cfg.se_batches);
  write_trace(log, dir);
  write_text_file(dir / "summary.csv", summary_csv(summary_metrics(s)));
  write_manifest(cfg, dir);
  std::ostringstream msg;
  msg << "run " << cfg.preset << ": effectiveness " << format_double(s.effectiveness) << ", cost "
      << format_double(s.cost) << ", Z_T/T " << format_double(s.z_over_t);
  note(o, out, msg.str());
  return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  ScenarioConfig cfg = resolve(o);
  cfg.mode = RunMode::grid_sweep;
  const auto dir = prepare_out(o);
  const GridResult g = run_grid(cfg);
  write_text_file(dir / "grid.csv", grid_csv(g));
  const auto& th = cfg.sweep.contour_thresholds;
  for (std::size_t l = 0; l < g.thetas.size(); ++l) {
    if (cfg.sweep.y_axis == "cost") {
      for (std::size_t k = 0; k < g.d_maxes.size(); ++k)
        write_heatmap(heatmap_vs_cost(g, k, l, th), dir, "t" + std::to_string(l) + "_d" + std::to_string(k));
    } else {
      for (std::size_t j = 0; j < g.powers.size(); ++j)
        write_heatmap(heatmap_vs_dmax(g, j, l, th), dir, "t" + std::to_string(l) + "_p" + std::to_string(j));
    }
  }
  write_manifest(cfg, dir);
  note(o, out, "sweep " + cfg.preset + ": " + std::to_string(g.gammas.size() * g.powers.size() * g.d_maxes.size() *
                                                             g.thetas.size()) + " cells");
  return 0;
}

int cmd_split(const Options& o, std::ostream& out) {
  ScenarioConfig cfg = resolve(o);
  cfg.mode = RunMode::bandwidth_split;
  const auto dir = prepare_out(o);
  const SplitResult r = run_bandwidth_split(cfg);
  write_text_file(dir / "split.csv", split_csv(r));
  std::vector<std::pair<std::string, double>> m{{"feasible", r.best ? 1.0 : 0.0},
                                                 {"rd_max_avg_bps", r.rd_max_avg}};
  if (r.best) {
    const auto& b = r.rows[*r.best];
    m.push_back({"best_fraction", b.fraction});
    m.push_back({"best_effectiveness", b.effectiveness});
    m.push_back({"best_cost", b.cost});
    m.push_back({"best_cost_se", b.cost_se});
  }
  write_text_file(dir / "summary.csv", summary_csv(m));
  write_manifest(cfg, dir);
  note(o, out, r.best ? "split " + cfg.preset + ": best fraction " + format_double(r.rows[*r.best].fraction)
                      : "split " + cfg.preset + ": infeasible");
  return 0;
}

int cmd_frontier(const Options& o, std::ostream& out) {
  ScenarioConfig cfg = resolve(o);
  if (!o.omegas.empty()) cfg.frontier.omegas = o.omegas;
  cfg.validate();
  const auto dir = prepare_out(o);
  const auto rows = run_frontier(cfg);
  write_text_file(dir / "frontier.csv", frontier_csv(rows));
  write_manifest(cfg, dir);
  note(o, out, "frontier " + cfg.preset + ": " + std::to_string(rows.size()) + " rows");
  return 0;
}

int cmd_table(const Options& o, std::ostream& out) {
  const ScenarioConfig cfg = resolve(o);
  const auto dir = prepare_out(o);
  const EntropyOracle oracle = cfg.oracle.build();
  const SuccessProbTable t = build_table_for(cfg, oracle, cfg.requirements.theta_th);
  write_success_table_csv(t, dir / "success_table.csv");
  write_manifest(cfg, dir);
  note(o, out, "table " + cfg.preset + ": " + std::to_string(t.size()) + " levels");
  return 0;
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int cli_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Goal-oriented / data-oriented spectrum coexistence simulator", "gocoexist"};
  app.require_subcommand(1);

  std::string names;
  for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const Options&, std::ostream&);
  };
  const Sub subs[] = {{"run", "adaptive controller run (trace + summary)", cmd_run},
                      {"sweep", "fixed-decision grid sweep (heat maps)", cmd_sweep},
                      {"split", "orthogonal bandwidth-splitting baseline", cmd_split},
                      {"frontier", "omega trade-off frontier, approximate and genie", cmd_frontier},
                      {"table", "build and save the success-probability table", cmd_table}};
  std::vector<std::pair<CLI::App*, const Sub*>> registered;
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("--config", o.config_path, "JSON run configuration");
    sc->add_option("--preset", o.preset, "preset: " + names);
    sc->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    sc->add_option("--seed", o.seed_text, "master seed (overrides config and GOCOEXIST_SEED)");
    sc->add_option("--omega", o.omegas, "comma-separated omega values")->delimiter(',');
    sc->add_flag("--quiet", o.quiet, "no progress output");
    registered.push_back({sc, &s});
  }

  std::vector<std::string> argv_store{"gocoexist"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "gocoexist: error: usage: " << one_line(e.what()) << " (see --help)\n";
    return 2;
  }

  try {
    for (const auto& [sc, s] : registered)
      if (sc->parsed()) return s->fn(o, out);
    err << "gocoexist: error: usage: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    err << "gocoexist: error: usage: " << one_line(e.what()) << " (see --help)\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "gocoexist: error: config: " << one_line(e.what()) << '\n';
    return e.key() == "preset" ? 2 : 1;
  } catch (const std::exception& e) {
    err << "gocoexist: error: runtime: " << one_line(e.what()) << '\n';
    return 1;
  }
}

}  // namespace gocoexist
