#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gocoexist/rng.hpp"

namespace gocoexist {

/// H(f) = H_min * (1 + scale * f^exponent) + eps, eps ~ N(0, noise_sd^2)
/// truncated at +-truncation_sd standard deviations; result clipped to [0, ln L].
struct ParametricOracleParams {
  double h_min = 0.3;
  int labels = 10;
  double distortion_scale = 750.0;
  double distortion_exponent = 2.0;
  double noise_sd_nats = 0.102;
  double truncation_sd = 3.0;

  void validate() const;
  bool operator==(const ParametricOracleParams&) const = default;
};

/// Empirical batch-entropy draws recorded at one PER level.
struct OracleSampleSet {
  double per_level = 0.0;
  std::vector<double> samples;
};

/// Quantiles q05, q25, q50, q75, q95 of batch entropy at one PER level.
struct OracleQuantileRow {
  double per_level = 0.0;
  double q[5] = {0, 0, 0, 0, 0};
};

/// Stochastic map from realized packet-error fraction to batch-average entropy
/// (nats). Every draw is driven by a single uniform u through a quantile
/// function that is non-decreasing in the error fraction for each u, so the
/// mean entropy is monotone in the error fraction by construction.
class EntropyOracle {
 public:
  static EntropyOracle parametric(const ParametricOracleParams& p);
  static EntropyOracle from_samples(std::vector<OracleSampleSet> levels, double h_min, int labels);
  static EntropyOracle from_quantiles(std::vector<OracleQuantileRow> rows, double h_min, int labels);
  /// Reads `per_level,sample_entropy` or `per_level,q05,q25,q50,q75,q95`.
  static EntropyOracle load_table_csv(const std::filesystem::path& path, double h_min, int labels);

  double h_min() const noexcept { return h_min_; }
  int labels() const noexcept { return labels_; }
  double h_max() const noexcept { return h_max_; }
  bool is_parametric() const noexcept { return parametric_; }

  /// Entropy at error fraction f for the quantile level u in [0, 1).
  double entropy_at(double error_fraction, double u) const;
  double sample_entropy(double error_fraction, RngStream& rng) const;
  /// Mean over u (midpoint rule, 4096 points).
  double mean_entropy(double error_fraction) const;

 private:
  EntropyOracle() = default;
  void finish_table();

  bool parametric_ = true;
  ParametricOracleParams params_;
  double tail_lo_ = 0.0;  // Phi(-truncation_sd)

  std::vector<double> levels_;
  std::vector<std::vector<double>> grid_;  // grid_[level][k], quantile at (k + 0.5) / G

  double h_min_ = 0.3;
  int labels_ = 10;
  double h_max_ = 0.0;
};

}  // namespace gocoexist
