#include "gocoexist/goal_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gocoexist/errors.hpp"

namespace gocoexist {

double entropy(std::span<const double> p) {
  if (p.empty()) throw DomainError("entropy: empty probability vector");
  double sum = 0.0;
  double h = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw DomainError("entropy: negative probability");
    sum += x;
    if (x > 0.0) h -= x * std::log(x);
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError("entropy: probabilities do not sum to 1");
  return std::clamp(h, 0.0, std::log(static_cast<double>(p.size())));
}

double batch_avg_entropy(std::span<const double> values) {
  if (values.empty()) throw DomainError("batch_avg_entropy: empty batch");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double nrei(double h, double h_min) {
  if (!(h_min > 0.0)) throw DomainError("nrei: h_min must be > 0");
  return -(h - h_min) / h_min;
}

std::uint64_t sample_packet_errors(std::uint64_t n_packets, double gamma, RngStream& rng) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("sample_packet_errors: gamma outside [0,1]");
  if (gamma == 0.0 || n_packets == 0) return 0;
  if (gamma == 1.0) return n_packets;
  std::binomial_distribution<std::uint64_t> d(n_packets, gamma);
  return d(rng);
}

double oracle_theta(const EntropyOracle& oracle, double error_fraction, RngStream& rng) {
  return nrei(oracle.sample_entropy(error_fraction, rng), oracle.h_min());
}

void GoalRequirements::validate() const {
  if (!std::isfinite(theta_th)) throw ConfigError("requirements.theta_th", "must be finite");
  if (!(d_max_s >= 0.0)) throw ConfigError("requirements.d_max_s", "must be >= 0");
  if (!(e_th >= 0.0 && e_th < 1.0)) throw ConfigError("requirements.e_th", "must lie in [0, 1)");
}

int goal_success(double theta, const GoalRequirements& req, double d_tot_s) noexcept {
  return (theta >= req.theta_th && d_tot_s <= req.d_max_s) ? 1 : 0;
}

double effectiveness(std::span<const int> history) {
  if (history.empty()) throw DomainError("effectiveness: empty history");
  std::uint64_t s = 0;
  for (int x : history) s += static_cast<std::uint64_t>(x);
  return static_cast<double>(s) / static_cast<double>(history.size());
}

double goal_cost(double avg_rd, double rd_max_avg) {
  if (!(rd_max_avg > 0.0)) throw DomainError("goal_cost: reference rate must be > 0");
  return std::clamp((rd_max_avg - avg_rd) / rd_max_avg, 0.0, 1.0);
}

}  // namespace gocoexist
