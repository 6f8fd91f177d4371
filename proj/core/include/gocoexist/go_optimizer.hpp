#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gocoexist/entropy_oracle.hpp"
#include "gocoexist/goal_metrics.hpp"
#include "gocoexist/rf_model.hpp"
#include "gocoexist/rng.hpp"

namespace gocoexist {

struct VirtualQueueState {
  double z = 0.0;
  bool operator==(const VirtualQueueState&) const = default;
};

/// Z' = max(0, Z - success + e_th).
VirtualQueueState update_queue(VirtualQueueState q, int success, double e_th) noexcept;

/// Constant B in the realization-level drift bound
/// (Z'^2 - Z^2)/2 <= B + Z (e_th - success). Since |e_th - success| is e_th on
/// a failure and 1 - e_th on a success, B = max(e_th^2, (1 - e_th)^2) / 2.
double drift_constant(double e_th) noexcept;

/// The narrower constant (1 - e_th)^2 / 2, which only covers success slots
/// (or every slot when e_th <= 1/2).
double drift_constant_success_only(double e_th) noexcept;

/// Checks (Z'^2 - Z^2)/2 <= b + Z (e_th - success) with relative tolerance 1e-12.
bool drift_bound_holds(double z, double z_next, int success, double e_th, double b) noexcept;

/// Estimated P{Theta >= Theta_th | gamma} per PER level.
struct SuccessProbTable {
  std::vector<double> levels;
  std::vector<double> p_success;
  std::vector<std::uint64_t> n_samples;

  std::size_t size() const noexcept { return levels.size(); }
  bool operator==(const SuccessProbTable&) const = default;
};

/// Weighted pool-adjacent-violators projection onto non-increasing sequences.
/// Zero weights are treated as weight 1.
void isotonic_nonincreasing(std::vector<double>& values, std::span<const std::uint64_t> weights);

/// For every gamma: n_validation batches of Binomial(n_packets, gamma) errors
/// fed to the oracle; records the fraction with Theta >= theta_th, then
/// projects onto non-increasing in gamma.
SuccessProbTable build_success_table(const EntropyOracle& oracle, std::span<const double> gamma_grid,
                                     double theta_th, std::uint64_t n_packets,
                                     std::uint64_t n_validation, RngStream& rng);

/// Folds one observed outcome at level `index` into the table (online
/// re-estimation) and re-applies the projection.
void observe_success(SuccessProbTable& table, std::size_t index, bool theta_ok);

SuccessProbTable load_success_table_csv(const std::filesystem::path& path);
void write_success_table_csv(const SuccessProbTable& table, const std::filesystem::path& path);

enum class DecisionMode { approximate, genie, fixed_per, fixed_both };

std::string to_string(DecisionMode m);
DecisionMode decision_mode_from_string(const std::string& name);

struct SolverConfig {
  double omega = 1e-8;  ///< weight per bit/s of DO rate
  DecisionMode mode = DecisionMode::approximate;
  std::vector<double> per_grid;
  std::vector<double> power_grid;
  double fixed_gamma = 0.0;  ///< fixed_per / fixed_both
  double fixed_p_d = 0.0;    ///< fixed_both
  bool online_reestimation = false;

  /// Throws ConfigError when grids are empty or fixed values are off-grid.
  void validate() const;
};

struct SlotDecision {
  std::size_t gamma_index = 0;
  std::size_t power_index = 0;
  double gamma = 0.0;
  double p_d_w = 0.0;
  double objective = 0.0;
  bool operator==(const SlotDecision&) const = default;
};

/// -z * p_succ * delay_ok - omega * r_d
double dpp_objective(double z, double p_succ, int delay_ok, double r_d, double omega) noexcept;

/// Exhaustive search over gamma (outer, ascending) x P_d (inner, ascending);
/// the first strict minimum wins. In genie mode `genie_theta[i]` is the
/// realized Theta if gamma_i were chosen and replaces the table value by the
/// indicator Theta >= Theta_th.
SlotDecision solve_slot(double z, const ChannelRealization& ch, double d_comp_s,
                        const SuccessProbTable& table, const SolverConfig& cfg,
                        const RadioConfig& radio, const GoalRequirements& req,
                        std::span<const double> genie_theta = {});

struct BoundReport {
  std::vector<std::uint64_t> checkpoint_slots;
  std::vector<double> checkpoint_ratios;  ///< Z_t / t
  double final_ratio = 0.0;
  /// e_th - Z_T / T: the running effectiveness can not be lower than this.
  double effectiveness_lower_bound = 0.0;
  bool stable = false;  ///< final_ratio < 0.01
};

/// z_history[t] is the backlog after slot t (t = 0..T-1).
BoundReport theoretical_bound_check(std::span<const double> z_history, double e_th);

}  // namespace gocoexist
