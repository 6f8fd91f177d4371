#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gocoexist/rng.hpp"

namespace gocoexist {

/// One bin of a piecewise-uniform delay density. A bin with low == high is a
/// point mass.
struct HistogramBin {
  double low_s = 0.0;
  double high_s = 0.0;
  double prob = 0.0;
  bool operator==(const HistogramBin&) const = default;
};

enum class DelayFamily { constant, uniform, lognormal, shifted_exponential };

/// Parametric families, all in seconds.
///   constant:            a
///   uniform:             U[a, b]
///   lognormal:           exp(N(ln a, b^2))  (a = median, b = log-sd)
///   shifted_exponential: a + Exp(mean b)
struct ParametricDelay {
  DelayFamily family = DelayFamily::constant;
  double a = 0.0;
  double b = 0.0;
  bool operator==(const ParametricDelay&) const = default;
};

std::string to_string(DelayFamily f);
DelayFamily delay_family_from_string(const std::string& name);

/// Remote computation delay distribution plus an additive offset. Immutable
/// once built; with_offset returns a modified copy.
class ComputeDelayModel {
 public:
  /// Normalized-histogram model. Throws ConfigError if probabilities do not
  /// sum to 1 within 1e-9, a bin is inverted, or a delay is negative.
  static ComputeDelayModel histogram(std::vector<HistogramBin> bins, double offset_s = 0.0);
  static ComputeDelayModel parametric(ParametricDelay p, double offset_s = 0.0);

  /// Synthetic default: 1 ms bins on [10, 28) ms, lognormal shape with median
  /// 17 ms. Not a measurement.
  static ComputeDelayModel default_synthetic();

  ComputeDelayModel with_offset(double offset_s) const;

  double sample(RngStream& rng) const;
  /// P{D <= x} including the offset.
  double cdf(double x) const;
  /// Smallest attainable delay including the offset.
  double min_support() const;
  double mean() const;

  bool is_histogram() const noexcept { return is_histogram_; }
  const std::vector<HistogramBin>& bins() const noexcept { return bins_; }
  const ParametricDelay& params() const noexcept { return params_; }
  double offset() const noexcept { return offset_; }

  bool operator==(const ComputeDelayModel& o) const {
    return is_histogram_ == o.is_histogram_ && bins_ == o.bins_ && params_ == o.params_ &&
           offset_ == o.offset_;
  }

 private:
  ComputeDelayModel() = default;
  void build_cumulative();

  bool is_histogram_ = true;
  std::vector<HistogramBin> bins_;
  std::vector<double> cumulative_;
  ParametricDelay params_;
  double offset_ = 0.0;
};

double sample_comp_delay(const ComputeDelayModel& model, RngStream& rng);

/// Replaces (does not accumulate) the offset. Throws DomainError on negative input.
ComputeDelayModel set_offset(const ComputeDelayModel& model, double offset_s);

/// CSV with header `bin_low_s,bin_high_s,prob`.
std::vector<HistogramBin> load_histogram_csv(const std::filesystem::path& path);
void write_histogram_csv(const std::vector<HistogramBin>& bins, const std::filesystem::path& path);

}  // namespace gocoexist
