#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gocoexist/compute_model.hpp"
#include "gocoexist/entropy_oracle.hpp"
#include "gocoexist/goal_metrics.hpp"
#include "gocoexist/go_optimizer.hpp"
#include "gocoexist/rf_model.hpp"

namespace gocoexist {

enum class RunMode { adaptive, genie, grid_sweep, bandwidth_split };
enum class EventKind { set_theta_th, set_e_th, set_d_max, set_compute_offset };

std::string to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);
std::string to_string(EventKind k);
EventKind event_kind_from_string(const std::string& s);

struct ScenarioEvent {
  std::uint64_t slot = 0;
  EventKind kind = EventKind::set_theta_th;
  double value = 0.0;
  bool operator==(const ScenarioEvent&) const = default;
};

/// Where the compute delay distribution comes from.
///   synthetic       built-in default histogram
///   histogram       inline bins
///   histogram_file  CSV `bin_low_s,bin_high_s,prob`
///   parametric      family + (a, b)
struct ComputeConfig {
  std::string kind = "synthetic";
  std::vector<HistogramBin> bins;
  std::string histogram_path;
  ParametricDelay parametric;
  double offset_s = 0.0;

  ComputeDelayModel build() const;
  bool operator==(const ComputeConfig&) const = default;
};

/// `parametric` uses params; `table` reads table_path and takes h_min and
/// labels from params.
struct OracleConfig {
  std::string kind = "parametric";
  ParametricOracleParams params;
  std::string table_path;

  EntropyOracle build() const;
  bool operator==(const OracleConfig&) const = default;
};

struct SolverSettings {
  double omega = 1e-8;
  double fixed_gamma = 0.0;
  double fixed_p_d = 0.0;
  bool fixed = false;  ///< adaptive mode with a fixed PER (fixed_per) or fixed cell (fixed_both)
  bool fix_power = false;
  bool online_reestimation = false;
  std::uint64_t validation_batches = 10000;
  bool operator==(const SolverSettings&) const = default;
};

struct SweepConfig {
  std::vector<double> power_grid_w;  ///< empty -> full radio power grid
  std::vector<double> d_max_grid_s;  ///< empty -> requirements.d_max_s
  std::vector<double> theta_grid;    ///< empty -> requirements.theta_th
  std::vector<double> contour_thresholds{0.7, 0.8, 0.9};
  std::string y_axis = "d_max";  ///< "d_max" or "cost"
  bool operator==(const SweepConfig&) const = default;
};

struct SplitConfig {
  std::vector<double> fractions{0.05, 0.1,  0.15, 0.2,  0.25, 0.3,  0.35, 0.4,  0.45, 0.5, 0.55,
                                0.6,  0.65, 0.7,  0.75, 0.8,  0.85, 0.9,  0.95, 1.0};
  bool operator==(const SplitConfig&) const = default;
};

struct FrontierConfig {
  std::vector<double> omegas{1e-11, 1e-10, 1e-9, 1e-8, 1e-7};
  std::vector<double> thetas;  ///< empty -> requirements.theta_th
  bool include_genie = true;
  bool operator==(const FrontierConfig&) const = default;
};

struct ScenarioConfig {
  std::string preset = "default";
  std::string figure;  ///< figure this preset reproduces, empty for custom runs
  RunMode mode = RunMode::adaptive;
  std::uint64_t slots = 50000;
  std::uint64_t seed = 1;
  std::size_t window = 2000;
  std::size_t se_batches = 50;
  unsigned threads = 0;  ///< 0 -> hardware concurrency

  Geometry geometry;
  FadingParams fading;
  RadioConfig radio;
  ComputeConfig compute;
  OracleConfig oracle;
  GoalRequirements requirements;
  SolverSettings solver;
  std::vector<ScenarioEvent> events;

  SweepConfig sweep;
  SplitConfig split;
  FrontierConfig frontier;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

/// Mutable part of a run that events may change.
struct ScenarioState {
  GoalRequirements requirements;
  ComputeDelayModel compute;
  SuccessProbTable table;
};

/// Applies every event scheduled at slot t (events are sorted). A Theta_th
/// change rebuilds the success table from the oracle-table stream.
void apply_events(std::span<const ScenarioEvent> schedule, std::uint64_t t, ScenarioState& state,
                  const EntropyOracle& oracle, const ScenarioConfig& cfg);

/// Success table for the given threshold, drawn from the run's oracle-table stream.
SuccessProbTable build_table_for(const ScenarioConfig& cfg, const EntropyOracle& oracle, double theta_th);

/// Everything random about one slot. Each quantity has its own per-slot
/// stream, so any run on the same seed sees the same slot t regardless of mode,
/// decisions, or thread scheduling.
struct SlotDraws {
  ChannelRealization ch;
  double d_comp_s = 0.0;
  double difficulty = 0.0;  ///< entropy quantile level u
  std::vector<std::uint64_t> errors;  ///< packet errors per PER grid level
};

class SlotEnvironment {
 public:
  explicit SlotEnvironment(const ScenarioConfig& cfg);

  ChannelRealization channel(std::uint64_t slot) const;
  void draw(std::uint64_t slot, const ComputeDelayModel& compute, SlotDraws& out) const;

  /// Realized Theta at PER level i for the given draws.
  double theta(const SlotDraws& d, std::size_t i, const EntropyOracle& oracle) const;

 private:
  std::uint64_t seed_;
  ChannelSampler sampler_;
  std::vector<double> gammas_;
  std::uint64_t n_packets_;
};

/// Average interference-free DO Shannon rate at P_d,max over the run's channel streams.
double reference_rate(const ScenarioConfig& cfg);

/// Trailing-window mean; NaN before index window - 1. Throws DomainError if
/// window is 0 or exceeds the series length.
std::vector<double> moving_average(std::span<const double> series, std::size_t window);

struct TraceLog {
  std::vector<GoalOutcome> outcomes;
  std::vector<double> z;  ///< backlog after the slot's update
  std::vector<double> e_th;  ///< active effectiveness target per slot
  std::vector<double> running_eff;
  std::vector<double> moving_eff;
  std::vector<double> running_cost;
  std::vector<double> moving_cost;
  double rd_max_avg = 0.0;
  std::size_t window = 0;

  std::size_t size() const noexcept { return outcomes.size(); }
  std::vector<double> rd_series() const;
  std::vector<double> success_series() const;
};

struct RunSummary {
  double effectiveness = 0.0;
  double cost = 0.0;
  double cost_se = 0.0;
  double mean_rd_bps = 0.0;
  double rd_max_avg = 0.0;
  double z_final = 0.0;
  double z_over_t = 0.0;
  /// First slot from which the moving effectiveness stays >= target - 0.01;
  /// -1 if never.
  std::int64_t convergence_slot = -1;
  bool drift_bound_ok = true;  ///< with drift_constant on every slot
  /// Slots where the success-only constant (1 - e_th)^2 / 2 is exceeded.
  std::uint64_t success_only_bound_violations = 0;
};

RunSummary summarize(const TraceLog& log, std::size_t se_batches);

/// Slot-by-slot controller run (mode adaptive or genie).
TraceLog run_adaptive(const ScenarioConfig& cfg);

struct HeatmapCell {
  double x = 0.0;  ///< PER
  double y = 0.0;  ///< D_max (s) or goal cost
  double effectiveness = 0.0;
  double cost = 0.0;
};

struct ContourStat {
  double threshold = 0.0;
  std::size_t feasible_cells = 0;
  double min_cost = 0.0;  ///< NaN when no cell is feasible
};

struct HeatmapData {
  std::string x_name = "per";
  std::string y_name = "d_max_s";
  double theta_th = 0.0;
  std::vector<HeatmapCell> cells;
  std::vector<ContourStat> contours;
};

/// Fixed-decision sweep over PER x P_d x D_max x Theta_th on common random
/// numbers. Counts are exact integers.
struct GridResult {
  std::vector<double> gammas, powers, d_maxes, thetas;
  std::uint64_t slots = 0;
  double rd_max_avg = 0.0;
  std::vector<double> mean_rd;  ///< per power
  std::vector<double> cost;     ///< per power
  std::vector<double> cost_se;  ///< per power
  std::vector<std::uint64_t> success;     ///< [i][j][k][l]
  std::vector<std::uint64_t> delay_ok;    ///< [i][j][k]
  std::vector<std::uint64_t> theta_ok;    ///< [i][l]

  double eff(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const;
  double delay_eff(std::size_t i, std::size_t j, std::size_t k) const;
  double theta_eff(std::size_t i, std::size_t l) const;
};

GridResult run_grid(const ScenarioConfig& cfg);

/// PER x D_max map at power index j and threshold index l.
HeatmapData heatmap_vs_dmax(const GridResult& g, std::size_t j, std::size_t l,
                            std::span<const double> thresholds);
/// PER x cost map at D_max index k and threshold index l.
HeatmapData heatmap_vs_cost(const GridResult& g, std::size_t k, std::size_t l,
                            std::span<const double> thresholds);

struct SplitRow {
  double fraction = 0.0;
  double w_g_hz = 0.0;
  double effectiveness = 0.0;
  double cost = 0.0;
  double cost_se = 0.0;
  bool feasible = false;
};

struct SplitResult {
  std::vector<SplitRow> rows;
  std::optional<std::size_t> best;  ///< cheapest feasible row, none if infeasible
  double rd_max_avg = 0.0;
};

/// Orthogonal baseline: GO alone on W_g picks the PER maximizing
/// p_succ * delay_ok each slot; DO alone on W - W_g at P_d,max.
SplitResult run_bandwidth_split(const ScenarioConfig& cfg);

struct FrontierRow {
  double theta_th = 0.0;
  double omega = 0.0;
  RunSummary approx;
  std::optional<RunSummary> genie;
  double genie_minus_approx_se = 0.0;  ///< paired SE of the cost difference
  double delta_prev_se = 0.0;          ///< paired SE vs previous omega, same theta
};

std::vector<FrontierRow> run_frontier(const ScenarioConfig& cfg);

/// Per-slot DO rate when the DO user transmits at p_d and the GO user at P_g
/// (what a fixed cell earns slot by slot).
std::vector<double> fixed_power_rd_series(const ScenarioConfig& cfg, double p_d);

}  // namespace gocoexist
