#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gocoexist/entropy_oracle.hpp"
#include "gocoexist/rng.hpp"

namespace gocoexist {

/// Shannon entropy in nats, 0 ln 0 := 0. Throws DomainError unless the input
/// is non-negative and sums to 1 within 1e-9.
double entropy(std::span<const double> p);

/// Arithmetic mean. Throws DomainError on an empty batch.
double batch_avg_entropy(std::span<const double> values);

/// Negative relative entropy increase -(h - h_min) / h_min. Throws DomainError if h_min <= 0.
double nrei(double h, double h_min);

/// Binomial(n, gamma) draw.
std::uint64_t sample_packet_errors(std::uint64_t n_packets, double gamma, RngStream& rng);

double oracle_theta(const EntropyOracle& oracle, double error_fraction, RngStream& rng);

struct GoalRequirements {
  double theta_th = -0.4;
  double d_max_s = 0.045;
  double e_th = 0.8;

  /// Allows e_th = 0 (constraint disabled) as well as the open interval.
  void validate() const;
  bool operator==(const GoalRequirements&) const = default;
};

struct GoalOutcome {
  std::uint64_t slot = 0;
  double gamma = 0.0;
  double p_d_w = 0.0;
  double theta = 0.0;
  double d_tx_s = 0.0;
  double d_comp_s = 0.0;
  double d_tot_s = 0.0;
  int success = 0;
  double r_d_bps = 0.0;
};

int goal_success(double theta, const GoalRequirements& req, double d_tot_s) noexcept;

/// Mean of a success history. Throws DomainError when empty.
double effectiveness(std::span<const int> history);

/// (rd_max_avg - avg_rd) / rd_max_avg with small negative differences clamped
/// to 0. Throws DomainError if rd_max_avg <= 0.
double goal_cost(double avg_rd, double rd_max_avg);

}  // namespace gocoexist
