#include "gocoexist/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "gocoexist/errors.hpp"
#include "gocoexist/stats.hpp"

namespace gocoexist {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(0..n-1) on up to `threads` workers. Work items must write to
// disjoint outputs; the first exception is rethrown on the caller.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

SolverConfig solver_config_for(const ScenarioConfig& cfg) {
  SolverConfig s;
  s.omega = cfg.solver.omega;
  s.per_grid = cfg.radio.per_grid;
  s.power_grid = cfg.radio.power_grid();
  s.fixed_gamma = cfg.solver.fixed_gamma;
  s.fixed_p_d = cfg.solver.fixed_p_d;
  s.online_reestimation = cfg.solver.online_reestimation;
  if (cfg.mode == RunMode::genie) {
    s.mode = DecisionMode::genie;
  } else if (cfg.solver.fixed) {
    s.mode = cfg.solver.fix_power ? DecisionMode::fixed_both : DecisionMode::fixed_per;
  } else {
    s.mode = DecisionMode::approximate;
  }
  return s;
}

double do_reference_rate(const ChannelRealization& ch, const RadioConfig& radio, double noise) {
  return shannon_rate(sinr_do(ch, 0.0, radio.p_d_max_w, noise), radio.bandwidth_hz);
}

}  // namespace

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::adaptive: return "adaptive";
    case RunMode::genie: return "genie";
    case RunMode::grid_sweep: return "grid_sweep";
    case RunMode::bandwidth_split: return "bandwidth_split";
  }
  return "adaptive";
}

RunMode run_mode_from_string(const std::string& s) {
  if (s == "adaptive") return RunMode::adaptive;
  if (s == "genie") return RunMode::genie;
  if (s == "grid_sweep") return RunMode::grid_sweep;
  if (s == "bandwidth_split") return RunMode::bandwidth_split;
  throw ConfigError("mode", "unknown run mode '" + s + "'");
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::set_theta_th: return "set_theta_th";
    case EventKind::set_e_th: return "set_e_th";
    case EventKind::set_d_max: return "set_d_max";
    case EventKind::set_compute_offset: return "set_compute_offset";
  }
  return "set_theta_th";
}

EventKind event_kind_from_string(const std::string& s) {
  if (s == "set_theta_th") return EventKind::set_theta_th;
  if (s == "set_e_th") return EventKind::set_e_th;
  if (s == "set_d_max") return EventKind::set_d_max;
  if (s == "set_compute_offset") return EventKind::set_compute_offset;
  throw ConfigError("events.kind", "unknown event kind '" + s + "'");
}

ComputeDelayModel ComputeConfig::build() const {
  if (kind == "synthetic") return ComputeDelayModel::default_synthetic().with_offset(offset_s);
  if (kind == "histogram") return ComputeDelayModel::histogram(bins, offset_s);
  if (kind == "histogram_file")
    return ComputeDelayModel::histogram(load_histogram_csv(histogram_path), offset_s);
  if (kind == "parametric") return ComputeDelayModel::parametric(parametric, offset_s);
  throw ConfigError("compute.kind", "unknown kind '" + kind + "'");
}

EntropyOracle OracleConfig::build() const {
  if (kind == "parametric") return EntropyOracle::parametric(params);
  if (kind == "table") return EntropyOracle::load_table_csv(table_path, params.h_min, params.labels);
  throw ConfigError("oracle.kind", "unknown kind '" + kind + "'");
}

void ScenarioConfig::validate() const {
  if (slots < 1) throw ConfigError("slots", "must be >= 1");
  if (window < 1) throw ConfigError("window", "must be >= 1");
  if (se_batches < 2) throw ConfigError("se_batches", "must be >= 2");
  geometry.validate();
  fading.validate();
  radio.validate();
  if (!(radio.p_d_max_w > 0.0)) throw ConfigError("radio.p_d_max_w", "must be > 0");
  requirements.validate();
  (void)compute.build();
  if (oracle.kind == "parametric") {
    oracle.params.validate();
  } else if (oracle.kind != "table") {
    throw ConfigError("oracle.kind", "must be 'parametric' or 'table'");
  }
  if (!(solver.omega >= 0.0)) throw ConfigError("solver.omega", "must be >= 0");
  if (solver.validation_batches < 1) throw ConfigError("solver.validation_batches", "must be >= 1");
  solver_config_for(*this).validate();

  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.slot >= slots) throw ConfigError("events.slot", "event beyond the last slot");
    if (i > 0 && !(e.slot > events[i - 1].slot))
      throw ConfigError("events.slot", "event slots must be strictly increasing");
    switch (e.kind) {
      case EventKind::set_theta_th:
        if (!std::isfinite(e.value)) throw ConfigError("events.value", "theta_th must be finite");
        break;
      case EventKind::set_e_th:
        if (!(e.value >= 0.0 && e.value < 1.0)) throw ConfigError("events.value", "e_th must lie in [0, 1)");
        break;
      case EventKind::set_d_max:
        if (!(e.value >= 0.0)) throw ConfigError("events.value", "d_max must be >= 0");
        break;
      case EventKind::set_compute_offset:
        if (!(e.value >= 0.0) || !std::isfinite(e.value))
          throw ConfigError("events.value", "offset must be finite and >= 0");
        break;
    }
  }

  for (double p : sweep.power_grid_w)
    if (!(p >= 0.0 && p <= radio.p_d_max_w)) throw ConfigError("sweep.power_grid_w", "outside [0, p_d_max_w]");
  for (double d : sweep.d_max_grid_s)
    if (!(d >= 0.0)) throw ConfigError("sweep.d_max_grid_s", "must be >= 0");
  for (double th : sweep.theta_grid)
    if (!std::isfinite(th)) throw ConfigError("sweep.theta_grid", "must be finite");
  for (double c : sweep.contour_thresholds)
    if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("sweep.contour_thresholds", "must lie in [0, 1]");
  if (sweep.y_axis != "d_max" && sweep.y_axis != "cost")
    throw ConfigError("sweep.y_axis", "must be 'd_max' or 'cost'");
  if (split.fractions.empty()) throw ConfigError("split.fractions", "must not be empty");
  for (double f : split.fractions)
    if (!(f > 0.0 && f <= 1.0)) throw ConfigError("split.fractions", "must lie in (0, 1]");
  if (frontier.omegas.empty()) throw ConfigError("frontier.omegas", "must not be empty");
  for (double o : frontier.omegas)
    if (!(o >= 0.0)) throw ConfigError("frontier.omegas", "must be >= 0");
  for (double th : frontier.thetas)
    if (!std::isfinite(th)) throw ConfigError("frontier.thetas", "must be finite");
}

SuccessProbTable build_table_for(const ScenarioConfig& cfg, const EntropyOracle& oracle, double theta_th) {
  RngStream rng = make_stream(cfg.seed, StreamTag::oracle_table);
  return build_success_table(oracle, cfg.radio.per_grid, theta_th, cfg.radio.packets_per_batch(),
                             cfg.solver.validation_batches, rng);
}

void apply_events(std::span<const ScenarioEvent> schedule, std::uint64_t t, ScenarioState& state,
                  const EntropyOracle& oracle, const ScenarioConfig& cfg) {
  for (const auto& e : schedule) {
    if (e.slot != t) continue;
    switch (e.kind) {
      case EventKind::set_theta_th:
        state.requirements.theta_th = e.value;
        state.table = build_table_for(cfg, oracle, e.value);
        break;
      case EventKind::set_e_th:
        state.requirements.e_th = e.value;
        break;
      case EventKind::set_d_max:
        state.requirements.d_max_s = e.value;
        break;
      case EventKind::set_compute_offset:
        state.compute = set_offset(state.compute, e.value);
        break;
    }
  }
}

// ---------------------------------------------------------------------------

SlotEnvironment::SlotEnvironment(const ScenarioConfig& cfg)
    : seed_(cfg.seed),
      sampler_(cfg.geometry, cfg.fading),
      gammas_(cfg.radio.per_grid),
      n_packets_(cfg.radio.packets_per_batch()) {}

ChannelRealization SlotEnvironment::channel(std::uint64_t slot) const {
  RngStream rng = make_stream(seed_, StreamTag::channel, slot);
  return sampler_.sample(rng);
}

void SlotEnvironment::draw(std::uint64_t slot, const ComputeDelayModel& compute, SlotDraws& out) const {
  out.ch = channel(slot);
  RngStream comp = make_stream(seed_, StreamTag::compute_delay, slot);
  out.d_comp_s = compute.sample(comp);
  RngStream diff = make_stream(seed_, StreamTag::batch_difficulty, slot);
  out.difficulty = uniform01(diff);
  RngStream err = make_stream(seed_, StreamTag::packet_errors, slot);
  out.errors.resize(gammas_.size());
  for (std::size_t i = 0; i < gammas_.size(); ++i)
    out.errors[i] = sample_packet_errors(n_packets_, gammas_[i], err);
}

double SlotEnvironment::theta(const SlotDraws& d, std::size_t i, const EntropyOracle& oracle) const {
  const double f = static_cast<double>(d.errors[i]) / static_cast<double>(n_packets_);
  return nrei(oracle.entropy_at(f, d.difficulty), oracle.h_min());
}

double reference_rate(const ScenarioConfig& cfg) {
  const SlotEnvironment env(cfg);
  const double noise = cfg.radio.noise_w();
  double sum = 0.0;
  for (std::uint64_t t = 0; t < cfg.slots; ++t) sum += do_reference_rate(env.channel(t), cfg.radio, noise);
  return sum / static_cast<double>(cfg.slots);
}

std::vector<double> fixed_power_rd_series(const ScenarioConfig& cfg, double p_d) {
  const SlotEnvironment env(cfg);
  const double noise = cfg.radio.noise_w();
  std::vector<double> out(cfg.slots);
  for (std::uint64_t t = 0; t < cfg.slots; ++t)
    out[t] = shannon_rate(sinr_do(env.channel(t), cfg.radio.p_g_w, p_d, noise), cfg.radio.bandwidth_hz);
  return out;
}

std::vector<double> moving_average(std::span<const double> series, std::size_t window) {
  if (window == 0) throw DomainError("moving_average: window must be >= 1");
  if (window > series.size()) throw DomainError("moving_average: window longer than series");
  std::vector<double> out(series.size(), kNaN);
  // Neumaier-compensated sliding sum.
  double sum = 0.0, comp = 0.0;
  auto add = [&](double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  };
  const double w = static_cast<double>(window);
  for (std::size_t i = 0; i < series.size(); ++i) {
    add(series[i]);
    if (i >= window) add(-series[i - window]);
    if (i + 1 >= window) out[i] = (sum + comp) / w;
  }
  return out;
}

std::vector<double> TraceLog::rd_series() const {
  std::vector<double> v(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) v[i] = outcomes[i].r_d_bps;
  return v;
}

std::vector<double> TraceLog::success_series() const {
  std::vector<double> v(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) v[i] = outcomes[i].success;
  return v;
}

RunSummary summarize(const TraceLog& log, std::size_t se_batches) {
  RunSummary s;
  const std::size_t n = log.size();
  if (n == 0) return s;
  const auto rd = log.rd_series();
  s.effectiveness = log.running_eff.back();
  s.cost = log.running_cost.back();
  s.mean_rd_bps = mean_of(rd);
  s.rd_max_avg = log.rd_max_avg;
  s.cost_se = log.rd_max_avg > 0.0 ? batch_means_se(rd, se_batches) / log.rd_max_avg : 0.0;
  s.z_final = log.z.back();
  s.z_over_t = s.z_final / static_cast<double>(n);

  std::size_t conv = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double m = log.moving_eff[t];
    if (std::isnan(m) || m < log.e_th[t] - 0.01) conv = t + 1;
  }
  s.convergence_slot = conv < n ? static_cast<std::int64_t>(conv) : -1;

  double z_prev = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const int succ = log.outcomes[t].success;
    if (!drift_bound_holds(z_prev, log.z[t], succ, log.e_th[t], drift_constant(log.e_th[t])))
      s.drift_bound_ok = false;
    if (!drift_bound_holds(z_prev, log.z[t], succ, log.e_th[t], drift_constant_success_only(log.e_th[t])))
      ++s.success_only_bound_violations;
    z_prev = log.z[t];
  }
  return s;
}

TraceLog run_adaptive(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.mode != RunMode::adaptive && cfg.mode != RunMode::genie)
    throw ConfigError("mode", "run_adaptive needs mode 'adaptive' or 'genie'");

  const EntropyOracle oracle = cfg.oracle.build();
  const SlotEnvironment env(cfg);
  const RadioConfig& radio = cfg.radio;
  const SolverConfig scfg = solver_config_for(cfg);
  const double noise = radio.noise_w();
  const double bits = radio.batch_bits();
  const std::uint64_t T = cfg.slots;

  ScenarioState state{cfg.requirements, cfg.compute.build(), {}};
  state.table = build_table_for(cfg, oracle, state.requirements.theta_th);

  // Reference pass: interference-free DO rate at P_d,max on the same channels.
  std::vector<ChannelRealization> channels(T);
  double rmax_sum = 0.0;
  for (std::uint64_t t = 0; t < T; ++t) {
    channels[t] = env.channel(t);
    rmax_sum += do_reference_rate(channels[t], radio, noise);
  }

  TraceLog log;
  log.rd_max_avg = rmax_sum / static_cast<double>(T);
  log.window = cfg.window;
  log.outcomes.reserve(T);
  log.z.reserve(T);
  log.e_th.reserve(T);

  const bool genie = scfg.mode == DecisionMode::genie;
  std::vector<double> genie_theta;
  SlotDraws d;
  VirtualQueueState q;
  for (std::uint64_t t = 0; t < T; ++t) {
    apply_events(cfg.events, t, state, oracle, cfg);
    const GoalRequirements& req = state.requirements;
    env.draw(t, state.compute, d);

    if (genie) {
      genie_theta.resize(radio.per_grid.size());
      for (std::size_t i = 0; i < genie_theta.size(); ++i) genie_theta[i] = env.theta(d, i, oracle);
    }
    const SlotDecision dec = solve_slot(q.z, d.ch, d.d_comp_s, state.table, scfg, radio, req, genie_theta);

    GoalOutcome o;
    o.slot = t;
    o.gamma = dec.gamma;
    o.p_d_w = dec.p_d_w;
    o.theta = env.theta(d, dec.gamma_index, oracle);
    const double rate = fbl_rate(sinr_go(d.ch, radio.p_g_w, dec.p_d_w, noise), radio.bandwidth_hz,
                                 radio.blocklength, dec.gamma);
    o.d_tx_s = tx_delay(bits, rate);
    o.d_comp_s = d.d_comp_s;
    o.d_tot_s = o.d_tx_s + o.d_comp_s;
    o.success = goal_success(o.theta, req, o.d_tot_s);
    o.r_d_bps = shannon_rate(sinr_do(d.ch, radio.p_g_w, dec.p_d_w, noise), radio.bandwidth_hz);

    q = update_queue(q, o.success, req.e_th);
    if (scfg.online_reestimation) observe_success(state.table, dec.gamma_index, o.theta >= req.theta_th);

    log.outcomes.push_back(o);
    log.z.push_back(q.z);
    log.e_th.push_back(req.e_th);
  }

  const auto succ = log.success_series();
  const auto rd = log.rd_series();
  std::vector<double> slot_cost(T);
  log.running_eff.resize(T);
  log.running_cost.resize(T);
  double s_sum = 0.0, rd_sum = 0.0;
  for (std::uint64_t t = 0; t < T; ++t) {
    s_sum += succ[t];
    rd_sum += rd[t];
    log.running_eff[t] = s_sum / static_cast<double>(t + 1);
    log.running_cost[t] = goal_cost(rd_sum / static_cast<double>(t + 1), log.rd_max_avg);
    slot_cost[t] = (log.rd_max_avg - rd[t]) / log.rd_max_avg;
  }
  if (cfg.window <= T) {
    log.moving_eff = moving_average(succ, cfg.window);
    log.moving_cost = moving_average(slot_cost, cfg.window);
  } else {
    log.moving_eff.assign(T, kNaN);
    log.moving_cost.assign(T, kNaN);
  }
  return log;
}

// ---------------------------------------------------------------------------

double GridResult::eff(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
  const std::size_t idx = ((i * powers.size() + j) * d_maxes.size() + k) * thetas.size() + l;
  return static_cast<double>(success[idx]) / static_cast<double>(slots);
}

double GridResult::delay_eff(std::size_t i, std::size_t j, std::size_t k) const {
  const std::size_t idx = (i * powers.size() + j) * d_maxes.size() + k;
  return static_cast<double>(delay_ok[idx]) / static_cast<double>(slots);
}

double GridResult::theta_eff(std::size_t i, std::size_t l) const {
  return static_cast<double>(theta_ok[i * thetas.size() + l]) / static_cast<double>(slots);
}

GridResult run_grid(const ScenarioConfig& cfg) {
  cfg.validate();
  const EntropyOracle oracle = cfg.oracle.build();
  const SlotEnvironment env(cfg);
  const RadioConfig& radio = cfg.radio;
  const ComputeDelayModel compute = cfg.compute.build();
  const double noise = radio.noise_w();
  const double bits = radio.batch_bits();
  const double w = radio.bandwidth_hz;

  GridResult g;
  g.gammas = radio.per_grid;
  g.powers = cfg.sweep.power_grid_w.empty() ? radio.power_grid() : cfg.sweep.power_grid_w;
  g.d_maxes = cfg.sweep.d_max_grid_s.empty() ? std::vector<double>{cfg.requirements.d_max_s} : cfg.sweep.d_max_grid_s;
  g.thetas = cfg.sweep.theta_grid.empty() ? std::vector<double>{cfg.requirements.theta_th} : cfg.sweep.theta_grid;
  g.slots = cfg.slots;

  const std::size_t NG = g.gammas.size(), NP = g.powers.size(), ND = g.d_maxes.size(), NT = g.thetas.size();
  std::vector<double> qinv(NG);
  for (std::size_t i = 0; i < NG; ++i) qinv[i] = q_inv(g.gammas[i]);

  struct Chunk {
    std::vector<std::uint64_t> success, delay_ok, theta_ok;
    std::vector<double> rd_sum;
    std::uint64_t count = 0;
  };
  const std::size_t B = std::min<std::size_t>(cfg.se_batches, cfg.slots);
  std::vector<Chunk> chunks(B);

  parallel_for(B, cfg.threads, [&](std::size_t b) {
    Chunk& c = chunks[b];
    c.success.assign(NG * NP * ND * NT, 0);
    c.delay_ok.assign(NG * NP * ND, 0);
    c.theta_ok.assign(NG * NT, 0);
    c.rd_sum.assign(NP, 0.0);
    const std::uint64_t lo = b * cfg.slots / B;
    const std::uint64_t hi = (b + 1) * cfg.slots / B;
    c.count = hi - lo;
    SlotDraws d;
    std::vector<char> th_ok(NG * NT);
    for (std::uint64_t t = lo; t < hi; ++t) {
      env.draw(t, compute, d);
      for (std::size_t i = 0; i < NG; ++i) {
        const double th = env.theta(d, i, oracle);
        for (std::size_t l = 0; l < NT; ++l) {
          th_ok[i * NT + l] = th >= g.thetas[l];
          c.theta_ok[i * NT + l] += th_ok[i * NT + l];
        }
      }
      for (std::size_t j = 0; j < NP; ++j) {
        const FblTerms terms = fbl_terms(sinr_go(d.ch, radio.p_g_w, g.powers[j], noise), radio.blocklength);
        c.rd_sum[j] += shannon_rate(sinr_do(d.ch, radio.p_g_w, g.powers[j], noise), w);
        for (std::size_t i = 0; i < NG; ++i) {
          const double d_tot = tx_delay(bits, fbl_rate_from_terms(terms, w, qinv[i])) + d.d_comp_s;
          for (std::size_t k = 0; k < ND; ++k) {
            if (!(d_tot <= g.d_maxes[k])) continue;
            const std::size_t base = (i * NP + j) * ND + k;
            c.delay_ok[base] += 1;
            for (std::size_t l = 0; l < NT; ++l) c.success[base * NT + l] += th_ok[i * NT + l];
          }
        }
      }
    }
  });

  g.success.assign(NG * NP * ND * NT, 0);
  g.delay_ok.assign(NG * NP * ND, 0);
  g.theta_ok.assign(NG * NT, 0);
  std::vector<double> rd_total(NP, 0.0);
  for (const auto& c : chunks) {
    for (std::size_t x = 0; x < g.success.size(); ++x) g.success[x] += c.success[x];
    for (std::size_t x = 0; x < g.delay_ok.size(); ++x) g.delay_ok[x] += c.delay_ok[x];
    for (std::size_t x = 0; x < g.theta_ok.size(); ++x) g.theta_ok[x] += c.theta_ok[x];
    for (std::size_t j = 0; j < NP; ++j) rd_total[j] += c.rd_sum[j];
  }

  g.rd_max_avg = reference_rate(cfg);
  g.mean_rd.resize(NP);
  g.cost.resize(NP);
  g.cost_se.resize(NP);
  for (std::size_t j = 0; j < NP; ++j) {
    g.mean_rd[j] = rd_total[j] / static_cast<double>(cfg.slots);
    g.cost[j] = goal_cost(g.mean_rd[j], g.rd_max_avg);
    std::vector<double> means;
    for (const auto& c : chunks)
      if (c.count > 0) means.push_back(c.rd_sum[j] / static_cast<double>(c.count));
    double se = 0.0;
    if (means.size() >= 2) {
      const double m = mean_of(means);
      double ss = 0.0;
      for (double v : means) ss += (v - m) * (v - m);
      se = std::sqrt(ss / static_cast<double>(means.size() - 1) / static_cast<double>(means.size()));
    }
    g.cost_se[j] = se / g.rd_max_avg;
  }
  return g;
}

namespace {

void fill_contours(HeatmapData& h, std::span<const double> thresholds) {
  for (double th : thresholds) {
    ContourStat c;
    c.threshold = th;
    c.min_cost = kNaN;
    for (const auto& cell : h.cells) {
      if (cell.effectiveness >= th) {
        ++c.feasible_cells;
        if (std::isnan(c.min_cost) || cell.cost < c.min_cost) c.min_cost = cell.cost;
      }
    }
    h.contours.push_back(c);
  }
}

}  // namespace

HeatmapData heatmap_vs_dmax(const GridResult& g, std::size_t j, std::size_t l,
                            std::span<const double> thresholds) {
  HeatmapData h;
  h.x_name = "per";
  h.y_name = "d_max_s";
  h.theta_th = g.thetas.at(l);
  for (std::size_t i = 0; i < g.gammas.size(); ++i)
    for (std::size_t k = 0; k < g.d_maxes.size(); ++k)
      h.cells.push_back({g.gammas[i], g.d_maxes[k], g.eff(i, j, k, l), g.cost.at(j)});
  fill_contours(h, thresholds);
  return h;
}

HeatmapData heatmap_vs_cost(const GridResult& g, std::size_t k, std::size_t l,
                            std::span<const double> thresholds) {
  HeatmapData h;
  h.x_name = "per";
  h.y_name = "cost";
  h.theta_th = g.thetas.at(l);
  for (std::size_t i = 0; i < g.gammas.size(); ++i)
    for (std::size_t j = 0; j < g.powers.size(); ++j)
      h.cells.push_back({g.gammas[i], g.cost[j], g.eff(i, j, k, l), g.cost[j]});
  fill_contours(h, thresholds);
  return h;
}

// ---------------------------------------------------------------------------

SplitResult run_bandwidth_split(const ScenarioConfig& cfg) {
  cfg.validate();
  const EntropyOracle oracle = cfg.oracle.build();
  const SlotEnvironment env(cfg);
  const ComputeDelayModel compute = cfg.compute.build();
  const GoalRequirements& req = cfg.requirements;
  const SuccessProbTable table = build_table_for(cfg, oracle, req.theta_th);
  const RadioConfig& radio = cfg.radio;
  const std::size_t NF = cfg.split.fractions.size();
  const std::uint64_t T = cfg.slots;

  SplitResult res;
  res.rd_max_avg = reference_rate(cfg);

  struct Arm {
    RadioConfig radio_g;
    SolverConfig solver;
    double w_d = 0.0;
    double noise_d = 0.0;
    std::uint64_t successes = 0;
    std::vector<double> rd;
  };
  std::vector<Arm> arms(NF);
  for (std::size_t f = 0; f < NF; ++f) {
    Arm& a = arms[f];
    a.radio_g = radio;
    a.radio_g.bandwidth_hz = cfg.split.fractions[f] * radio.bandwidth_hz;
    a.solver.omega = 0.0;
    a.solver.per_grid = radio.per_grid;
    a.solver.power_grid = {radio.p_d_max_w};
    a.w_d = radio.bandwidth_hz - a.radio_g.bandwidth_hz;
    if (a.w_d > 0.0) a.noise_d = noise_power(radio.n0_dbm_hz, a.w_d, radio.noise_figure_db);
    a.rd.resize(T);
  }

  parallel_for(NF, cfg.threads, [&](std::size_t f) {
    Arm& a = arms[f];
    const double noise_g = a.radio_g.noise_w();
    SlotDraws d;
    for (std::uint64_t t = 0; t < T; ++t) {
      env.draw(t, compute, d);
      ChannelRealization ch = d.ch;
      ch.g_gd = 0.0;
      ch.g_dg = 0.0;
      // z = 1, omega = 0: pick the PER with the best p_succ * delay_ok.
      const SlotDecision dec = solve_slot(1.0, ch, d.d_comp_s, table, a.solver, a.radio_g, req);
      const double theta = env.theta(d, dec.gamma_index, oracle);
      const double rate = fbl_rate(sinr_go(ch, radio.p_g_w, 0.0, noise_g), a.radio_g.bandwidth_hz,
                                   radio.blocklength, dec.gamma);
      a.successes += static_cast<std::uint64_t>(
          goal_success(theta, req, tx_delay(radio.batch_bits(), rate) + d.d_comp_s));
      a.rd[t] = a.w_d > 0.0 ? shannon_rate(sinr_do(ch, 0.0, radio.p_d_max_w, a.noise_d), a.w_d) : 0.0;
    }
  });

  for (std::size_t f = 0; f < NF; ++f) {
    const Arm& a = arms[f];
    SplitRow r;
    r.fraction = cfg.split.fractions[f];
    r.w_g_hz = a.radio_g.bandwidth_hz;
    r.effectiveness = static_cast<double>(a.successes) / static_cast<double>(T);
    r.cost = goal_cost(mean_of(a.rd), res.rd_max_avg);
    r.cost_se = batch_means_se(a.rd, cfg.se_batches) / res.rd_max_avg;
    r.feasible = r.effectiveness >= req.e_th;
    if (r.feasible && (!res.best || r.cost < res.rows[*res.best].cost)) res.best = res.rows.size();
    res.rows.push_back(r);
  }
  return res;
}

std::vector<FrontierRow> run_frontier(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::vector<double> thetas =
      cfg.frontier.thetas.empty() ? std::vector<double>{cfg.requirements.theta_th} : cfg.frontier.thetas;
  const auto& omegas = cfg.frontier.omegas;
  const std::size_t n = thetas.size() * omegas.size();
  const std::size_t per_job = cfg.frontier.include_genie ? 2 : 1;

  std::vector<RunSummary> summaries(n * per_job);
  std::vector<std::vector<double>> rd(n * per_job);
  std::vector<double> rmax(n);
  parallel_for(n * per_job, cfg.threads, [&](std::size_t job) {
    const std::size_t cell = job / per_job;
    ScenarioConfig c = cfg;
    c.requirements.theta_th = thetas[cell / omegas.size()];
    c.solver.omega = omegas[cell % omegas.size()];
    c.mode = (job % per_job == 1) ? RunMode::genie : RunMode::adaptive;
    c.threads = 1;
    const TraceLog log = run_adaptive(c);
    summaries[job] = summarize(log, cfg.se_batches);
    rd[job] = log.rd_series();
    if (job % per_job == 0) rmax[cell] = log.rd_max_avg;
  });

  std::vector<FrontierRow> rows;
  for (std::size_t cell = 0; cell < n; ++cell) {
    FrontierRow r;
    r.theta_th = thetas[cell / omegas.size()];
    r.omega = omegas[cell % omegas.size()];
    r.approx = summaries[cell * per_job];
    const auto& rd_a = rd[cell * per_job];
    if (cfg.frontier.include_genie) {
      r.genie = summaries[cell * per_job + 1];
      r.genie_minus_approx_se = paired_se(rd[cell * per_job + 1], rd_a, cfg.se_batches) / rmax[cell];
    }
    if (cell % omegas.size() != 0)
      r.delta_prev_se = paired_se(rd_a, rd[(cell - 1) * per_job], cfg.se_batches) / rmax[cell];
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gocoexist
