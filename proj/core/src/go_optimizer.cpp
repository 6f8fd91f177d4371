#include "gocoexist/go_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gocoexist/csv.hpp"
#include "gocoexist/errors.hpp"

namespace gocoexist {

VirtualQueueState update_queue(VirtualQueueState q, int success, double e_th) noexcept {
  return {std::max(0.0, q.z - static_cast<double>(success) + e_th)};
}

double drift_constant(double e_th) noexcept {
  return 0.5 * std::max(e_th * e_th, (1.0 - e_th) * (1.0 - e_th));
}

double drift_constant_success_only(double e_th) noexcept { return 0.5 * (1.0 - e_th) * (1.0 - e_th); }

bool drift_bound_holds(double z, double z_next, int success, double e_th, double b) noexcept {
  const double lhs = 0.5 * (z_next * z_next - z * z);
  const double rhs = b + z * (e_th - success);
  return lhs <= rhs + 1e-12 * std::max(1.0, z * z);
}

void isotonic_nonincreasing(std::vector<double>& values, std::span<const std::uint64_t> weights) {
  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double w = i < weights.size() && weights[i] > 0 ? static_cast<double>(weights[i]) : 1.0;
    blocks.push_back({values[i], w, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean < blocks.back().mean) {
      Block b = blocks.back();
      blocks.pop_back();
      Block& a = blocks.back();
      const double tw = a.weight + b.weight;
      a.mean = (a.mean * a.weight + b.mean * b.weight) / tw;
      a.weight = tw;
      a.count += b.count;
    }
  }
  std::size_t i = 0;
  for (const auto& b : blocks)
    for (std::size_t k = 0; k < b.count; ++k) values[i++] = b.mean;
}

SuccessProbTable build_success_table(const EntropyOracle& oracle, std::span<const double> gamma_grid,
                                     double theta_th, std::uint64_t n_packets,
                                     std::uint64_t n_validation, RngStream& rng) {
  if (n_validation < 1) throw DomainError("build_success_table: n_validation must be >= 1");
  if (n_packets < 1) throw DomainError("build_success_table: n_packets must be >= 1");
  SuccessProbTable t;
  const double np = static_cast<double>(n_packets);
  for (double gamma : gamma_grid) {
    std::uint64_t ok = 0;
    for (std::uint64_t v = 0; v < n_validation; ++v) {
      const double f = static_cast<double>(sample_packet_errors(n_packets, gamma, rng)) / np;
      if (oracle_theta(oracle, f, rng) >= theta_th) ++ok;
    }
    t.levels.push_back(gamma);
    t.p_success.push_back(static_cast<double>(ok) / static_cast<double>(n_validation));
    t.n_samples.push_back(n_validation);
  }
  isotonic_nonincreasing(t.p_success, t.n_samples);
  return t;
}

void observe_success(SuccessProbTable& table, std::size_t index, bool theta_ok) {
  if (index >= table.size()) throw DomainError("observe_success: index out of range");
  const double n = static_cast<double>(table.n_samples[index]);
  table.p_success[index] = (table.p_success[index] * n + (theta_ok ? 1.0 : 0.0)) / (n + 1.0);
  table.n_samples[index] += 1;
  isotonic_nonincreasing(table.p_success, table.n_samples);
}

SuccessProbTable load_success_table_csv(const std::filesystem::path& path) {
  const CsvTable csv = read_csv(path);
  const auto lc = csv.column("per_level");
  const auto pc = csv.column("p_success");
  const auto nc = csv.column("n_samples");
  SuccessProbTable t;
  for (const auto& row : csv.rows) {
    const double level = parse_double(row[lc]);
    const double p = parse_double(row[pc]);
    const double n = parse_double(row[nc]);
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(path.string(), "p_success outside [0,1]");
    if (!(n >= 0.0) || n != std::floor(n)) throw ConfigError(path.string(), "bad n_samples");
    if (!t.levels.empty() && !(level > t.levels.back()))
      throw ConfigError(path.string(), "per_level must be strictly ascending");
    t.levels.push_back(level);
    t.p_success.push_back(p);
    t.n_samples.push_back(static_cast<std::uint64_t>(n));
  }
  return t;
}

void write_success_table_csv(const SuccessProbTable& table, const std::filesystem::path& path) {
  std::ostringstream os;
  os << "per_level,p_success,n_samples\n";
  for (std::size_t i = 0; i < table.size(); ++i)
    os << format_double(table.levels[i]) << ',' << format_double(table.p_success[i]) << ','
       << table.n_samples[i] << '\n';
  write_text_file(path, os.str());
}

std::string to_string(DecisionMode m) {
  switch (m) {
    case DecisionMode::approximate: return "approximate";
    case DecisionMode::genie: return "genie";
    case DecisionMode::fixed_per: return "fixed_per";
    case DecisionMode::fixed_both: return "fixed_both";
  }
  return "approximate";
}

DecisionMode decision_mode_from_string(const std::string& name) {
  if (name == "approximate") return DecisionMode::approximate;
  if (name == "genie") return DecisionMode::genie;
  if (name == "fixed_per") return DecisionMode::fixed_per;
  if (name == "fixed_both") return DecisionMode::fixed_both;
  throw ConfigError("solver.mode", "unknown decision mode '" + name + "'");
}

namespace {

std::size_t index_on_grid(const std::vector<double>& grid, double v, const char* key) {
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] == v) return i;
  throw ConfigError(key, "value " + format_double(v) + " is not on the grid");
}

}  // namespace

void SolverConfig::validate() const {
  if (!(omega >= 0.0)) throw ConfigError("solver.omega", "must be >= 0");
  if (per_grid.empty()) throw ConfigError("radio.per_grid", "empty PER grid");
  if (power_grid.empty()) throw ConfigError("radio.p_d_points", "empty power grid");
  if (mode == DecisionMode::fixed_per || mode == DecisionMode::fixed_both)
    (void)index_on_grid(per_grid, fixed_gamma, "solver.fixed_gamma");
  if (mode == DecisionMode::fixed_both) (void)index_on_grid(power_grid, fixed_p_d, "solver.fixed_p_d");
}

double dpp_objective(double z, double p_succ, int delay_ok, double r_d, double omega) noexcept {
  return -z * p_succ * static_cast<double>(delay_ok) - omega * r_d;
}

SlotDecision solve_slot(double z, const ChannelRealization& ch, double d_comp_s,
                        const SuccessProbTable& table, const SolverConfig& cfg,
                        const RadioConfig& radio, const GoalRequirements& req,
                        std::span<const double> genie_theta) {
  const auto& gammas = cfg.per_grid;
  const auto& powers = cfg.power_grid;
  if (gammas.empty() || powers.empty()) throw ConfigError("solver", "empty decision grid");
  const bool genie = cfg.mode == DecisionMode::genie;
  if (genie && genie_theta.size() != gammas.size())
    throw ConfigError("solver.mode", "genie mode needs one realized Theta per PER level");
  if (!genie && table.size() != gammas.size())
    throw ConfigError("solver", "success table does not match the PER grid");

  std::size_t g_lo = 0, g_hi = gammas.size();
  std::size_t p_lo = 0, p_hi = powers.size();
  if (cfg.mode == DecisionMode::fixed_per || cfg.mode == DecisionMode::fixed_both) {
    g_lo = index_on_grid(gammas, cfg.fixed_gamma, "solver.fixed_gamma");
    g_hi = g_lo + 1;
  }
  if (cfg.mode == DecisionMode::fixed_both) {
    p_lo = index_on_grid(powers, cfg.fixed_p_d, "solver.fixed_p_d");
    p_hi = p_lo + 1;
  }

  const double w = radio.bandwidth_hz;
  const double noise = radio.noise_w();
  const double bits = radio.batch_bits();

  // Everything that depends only on P_d is computed once per power level.
  thread_local std::vector<FblTerms> terms;
  thread_local std::vector<double> r_d;
  terms.resize(p_hi - p_lo);
  r_d.resize(p_hi - p_lo);
  for (std::size_t j = p_lo; j < p_hi; ++j) {
    terms[j - p_lo] = fbl_terms(sinr_go(ch, radio.p_g_w, powers[j], noise), radio.blocklength);
    r_d[j - p_lo] = shannon_rate(sinr_do(ch, radio.p_g_w, powers[j], noise), w);
  }

  SlotDecision best;
  best.objective = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t i = g_lo; i < g_hi; ++i) {
    const double qi = q_inv(gammas[i]);
    const double p = genie ? (genie_theta[i] >= req.theta_th ? 1.0 : 0.0) : table.p_success[i];
    for (std::size_t j = p_lo; j < p_hi; ++j) {
      const double rate = fbl_rate_from_terms(terms[j - p_lo], w, qi);
      const int ok = tx_delay(bits, rate) + d_comp_s <= req.d_max_s ? 1 : 0;
      const double obj = dpp_objective(z, p, ok, r_d[j - p_lo], cfg.omega);
      if (!found || obj < best.objective) {
        best = {i, j, gammas[i], powers[j], obj};
        found = true;
      }
    }
  }
  return best;
}

BoundReport theoretical_bound_check(std::span<const double> z_history, double e_th) {
  BoundReport r;
  const std::size_t n = z_history.size();
  if (n == 0) return r;
  for (std::size_t t = 1; t <= n; t *= 2) {
    r.checkpoint_slots.push_back(t);
    r.checkpoint_ratios.push_back(z_history[t - 1] / static_cast<double>(t));
  }
  if (r.checkpoint_slots.back() != n) {
    r.checkpoint_slots.push_back(n);
    r.checkpoint_ratios.push_back(z_history[n - 1] / static_cast<double>(n));
  }
  r.final_ratio = r.checkpoint_ratios.back();
  r.effectiveness_lower_bound = e_th - r.final_ratio;
  r.stable = r.final_ratio < 0.01;
  return r;
}

}  // namespace gocoexist
