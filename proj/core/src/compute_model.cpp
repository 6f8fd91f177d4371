#include "gocoexist/compute_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gocoexist/csv.hpp"
#include "gocoexist/errors.hpp"

namespace gocoexist {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

void validate_params(const ParametricDelay& p) {
  const char* key = "compute.parametric";
  switch (p.family) {
    case DelayFamily::constant:
      if (!(p.a >= 0.0)) throw ConfigError(key, "constant delay must be >= 0");
      break;
    case DelayFamily::uniform:
      if (!(p.a >= 0.0 && p.b >= p.a)) throw ConfigError(key, "uniform needs 0 <= a <= b");
      break;
    case DelayFamily::lognormal:
      if (!(p.a > 0.0 && p.b >= 0.0)) throw ConfigError(key, "lognormal needs median > 0, sd >= 0");
      break;
    case DelayFamily::shifted_exponential:
      if (!(p.a >= 0.0 && p.b > 0.0)) throw ConfigError(key, "shifted exponential needs a >= 0, b > 0");
      break;
  }
}

void check_offset(double offset_s) {
  if (!(offset_s >= 0.0) || !std::isfinite(offset_s))
    throw DomainError("compute delay offset must be finite and >= 0");
}

}  // namespace

std::string to_string(DelayFamily f) {
  switch (f) {
    case DelayFamily::constant: return "constant";
    case DelayFamily::uniform: return "uniform";
    case DelayFamily::lognormal: return "lognormal";
    case DelayFamily::shifted_exponential: return "shifted_exponential";
  }
  return "constant";
}

DelayFamily delay_family_from_string(const std::string& name) {
  if (name == "constant") return DelayFamily::constant;
  if (name == "uniform") return DelayFamily::uniform;
  if (name == "lognormal") return DelayFamily::lognormal;
  if (name == "shifted_exponential") return DelayFamily::shifted_exponential;
  throw ConfigError("compute.parametric.family", "unknown family '" + name + "'");
}

ComputeDelayModel ComputeDelayModel::histogram(std::vector<HistogramBin> bins, double offset_s) {
  check_offset(offset_s);
  if (bins.empty()) throw ConfigError("compute.histogram", "no bins");
  double total = 0.0;
  for (const auto& b : bins) {
    if (!(b.low_s >= 0.0) || !std::isfinite(b.high_s))
      throw ConfigError("compute.histogram", "bin edges must be finite and >= 0");
    if (!(b.high_s >= b.low_s)) throw ConfigError("compute.histogram", "bin with high < low");
    if (!(b.prob >= 0.0)) throw ConfigError("compute.histogram", "negative probability");
    total += b.prob;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ConfigError("compute.histogram", "probabilities sum to " + format_double(total) + ", not 1");

  ComputeDelayModel m;
  m.is_histogram_ = true;
  m.bins_ = std::move(bins);
  m.offset_ = offset_s;
  m.build_cumulative();
  return m;
}

ComputeDelayModel ComputeDelayModel::parametric(ParametricDelay p, double offset_s) {
  check_offset(offset_s);
  validate_params(p);
  ComputeDelayModel m;
  m.is_histogram_ = false;
  m.params_ = p;
  m.offset_ = offset_s;
  return m;
}

ComputeDelayModel ComputeDelayModel::default_synthetic() {
  constexpr double median = 0.017;
  constexpr double log_sd = 0.15;
  std::vector<HistogramBin> bins;
  double total = 0.0;
  for (int ms = 10; ms < 28; ++ms) {
    const double lo = ms * 1e-3;
    const double hi = (ms + 1) * 1e-3;
    const double p = normal_cdf(std::log(hi / median) / log_sd) - normal_cdf(std::log(lo / median) / log_sd);
    bins.push_back({lo, hi, p});
    total += p;
  }
  for (auto& b : bins) b.prob /= total;
  return histogram(std::move(bins));
}

void ComputeDelayModel::build_cumulative() {
  cumulative_.resize(bins_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    acc += bins_[i].prob;
    cumulative_[i] = acc;
  }
  // Guard the top end against rounding so every u in [0,1) lands in a bin.
  cumulative_.back() = 1.0;
}

ComputeDelayModel ComputeDelayModel::with_offset(double offset_s) const {
  check_offset(offset_s);
  ComputeDelayModel m = *this;
  m.offset_ = offset_s;
  return m;
}

double ComputeDelayModel::sample(RngStream& rng) const {
  if (is_histogram_) {
    const double u = uniform01(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
    if (i >= bins_.size()) i = bins_.size() - 1;
    // Skip zero-mass bins that share a cumulative value with their predecessor.
    while (bins_[i].prob == 0.0 && i + 1 < bins_.size()) ++i;
    const auto& b = bins_[i];
    const double v = uniform01(rng);
    return b.low_s + (b.high_s - b.low_s) * v + offset_;
  }
  const auto& p = params_;
  switch (p.family) {
    case DelayFamily::constant:
      return p.a + offset_;
    case DelayFamily::uniform:
      return p.a + (p.b - p.a) * uniform01(rng) + offset_;
    case DelayFamily::lognormal: {
      std::normal_distribution<double> n(0.0, 1.0);
      return p.a * std::exp(p.b * n(rng)) + offset_;
    }
    case DelayFamily::shifted_exponential:
      return p.a - p.b * std::log1p(-uniform01(rng)) + offset_;
  }
  return offset_;
}

double ComputeDelayModel::cdf(double x) const {
  const double y = x - offset_;
  if (is_histogram_) {
    double acc = 0.0;
    for (const auto& b : bins_) {
      if (y >= b.high_s) {
        acc += b.prob;
      } else if (y > b.low_s) {
        acc += b.prob * (y - b.low_s) / (b.high_s - b.low_s);
      }
    }
    return std::min(acc, 1.0);
  }
  const auto& p = params_;
  switch (p.family) {
    case DelayFamily::constant:
      return y >= p.a ? 1.0 : 0.0;
    case DelayFamily::uniform:
      if (y >= p.b) return 1.0;
      if (y <= p.a) return 0.0;
      return (y - p.a) / (p.b - p.a);
    case DelayFamily::lognormal:
      if (y <= 0.0) return 0.0;
      if (p.b == 0.0) return y >= p.a ? 1.0 : 0.0;
      return normal_cdf(std::log(y / p.a) / p.b);
    case DelayFamily::shifted_exponential:
      return y <= p.a ? 0.0 : -std::expm1(-(y - p.a) / p.b);
  }
  return 0.0;
}

double ComputeDelayModel::min_support() const {
  if (is_histogram_) {
    for (const auto& b : bins_)
      if (b.prob > 0.0) return b.low_s + offset_;
    return offset_;
  }
  switch (params_.family) {
    case DelayFamily::lognormal:
      return params_.b == 0.0 ? params_.a + offset_ : offset_;
    default:
      return params_.a + offset_;
  }
}

double ComputeDelayModel::mean() const {
  if (is_histogram_) {
    double m = 0.0;
    for (const auto& b : bins_) m += b.prob * 0.5 * (b.low_s + b.high_s);
    return m + offset_;
  }
  const auto& p = params_;
  switch (p.family) {
    case DelayFamily::constant: return p.a + offset_;
    case DelayFamily::uniform: return 0.5 * (p.a + p.b) + offset_;
    case DelayFamily::lognormal: return p.a * std::exp(0.5 * p.b * p.b) + offset_;
    case DelayFamily::shifted_exponential: return p.a + p.b + offset_;
  }
  return offset_;
}

double sample_comp_delay(const ComputeDelayModel& model, RngStream& rng) { return model.sample(rng); }

ComputeDelayModel set_offset(const ComputeDelayModel& model, double offset_s) {
  return model.with_offset(offset_s);
}

std::vector<HistogramBin> load_histogram_csv(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  const auto lo = t.column("bin_low_s");
  const auto hi = t.column("bin_high_s");
  const auto pr = t.column("prob");
  std::vector<HistogramBin> bins;
  for (const auto& row : t.rows)
    bins.push_back({parse_double(row[lo]), parse_double(row[hi]), parse_double(row[pr])});
  // Validate through the factory so load errors match config errors.
  (void)ComputeDelayModel::histogram(bins);
  return bins;
}

void write_histogram_csv(const std::vector<HistogramBin>& bins, const std::filesystem::path& path) {
  std::ostringstream os;
  os << "bin_low_s,bin_high_s,prob\n";
  for (const auto& b : bins)
    os << format_double(b.low_s) << ',' << format_double(b.high_s) << ',' << format_double(b.prob) << '\n';
  write_text_file(path, os.str());
}

}  // namespace gocoexist
