#include "gocoexist/entropy_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gocoexist/csv.hpp"
#include "gocoexist/errors.hpp"
#include "gocoexist/rf_model.hpp"

namespace gocoexist {

namespace {

constexpr std::size_t kGrid = 1000;
constexpr double kQuantileU[5] = {0.05, 0.25, 0.50, 0.75, 0.95};

void check_common(double h_min, int labels, const char* key) {
  if (labels < 2) throw ConfigError(std::string(key) + ".labels", "must be >= 2");
  if (!(h_min > 0.0 && h_min <= std::log(static_cast<double>(labels))))
    throw ConfigError(std::string(key) + ".h_min", "must lie in (0, ln L]");
}

}  // namespace

void ParametricOracleParams::validate() const {
  check_common(h_min, labels, "oracle");
  if (!(distortion_scale >= 0.0)) throw ConfigError("oracle.distortion_scale", "must be >= 0");
  if (!(distortion_exponent > 0.0)) throw ConfigError("oracle.distortion_exponent", "must be > 0");
  if (!(noise_sd_nats >= 0.0)) throw ConfigError("oracle.noise_sd_nats", "must be >= 0");
  if (!(truncation_sd > 0.0) || !std::isfinite(truncation_sd))
    throw ConfigError("oracle.truncation_sd", "must be finite and > 0");
}

EntropyOracle EntropyOracle::parametric(const ParametricOracleParams& p) {
  p.validate();
  EntropyOracle o;
  o.parametric_ = true;
  o.params_ = p;
  o.h_min_ = p.h_min;
  o.labels_ = p.labels;
  o.h_max_ = std::log(static_cast<double>(p.labels));
  o.tail_lo_ = q_function(p.truncation_sd);
  return o;
}

EntropyOracle EntropyOracle::from_samples(std::vector<OracleSampleSet> levels, double h_min,
                                          int labels) {
  check_common(h_min, labels, "oracle");
  if (levels.empty()) throw ConfigError("oracle.table", "no PER levels");
  std::sort(levels.begin(), levels.end(),
            [](const auto& a, const auto& b) { return a.per_level < b.per_level; });
  EntropyOracle o;
  o.parametric_ = false;
  o.h_min_ = h_min;
  o.labels_ = labels;
  o.h_max_ = std::log(static_cast<double>(labels));
  for (auto& lv : levels) {
    if (lv.samples.empty()) throw ConfigError("oracle.table", "PER level without samples");
    if (!o.levels_.empty() && lv.per_level == o.levels_.back())
      throw ConfigError("oracle.table", "duplicate PER level");
    std::sort(lv.samples.begin(), lv.samples.end());
    std::vector<double> g(kGrid);
    const double n = static_cast<double>(lv.samples.size());
    for (std::size_t k = 0; k < kGrid; ++k) {
      const double u = (static_cast<double>(k) + 0.5) / kGrid;
      auto idx = static_cast<std::size_t>(u * n);
      g[k] = lv.samples[std::min(idx, lv.samples.size() - 1)];
    }
    o.levels_.push_back(lv.per_level);
    o.grid_.push_back(std::move(g));
  }
  o.finish_table();
  return o;
}

EntropyOracle EntropyOracle::from_quantiles(std::vector<OracleQuantileRow> rows, double h_min,
                                            int labels) {
  check_common(h_min, labels, "oracle");
  if (rows.empty()) throw ConfigError("oracle.table", "no PER levels");
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.per_level < b.per_level; });
  EntropyOracle o;
  o.parametric_ = false;
  o.h_min_ = h_min;
  o.labels_ = labels;
  o.h_max_ = std::log(static_cast<double>(labels));
  for (const auto& r : rows) {
    for (int i = 1; i < 5; ++i)
      if (r.q[i] < r.q[i - 1]) throw ConfigError("oracle.table", "quantiles must be non-decreasing");
    if (!o.levels_.empty() && r.per_level == o.levels_.back())
      throw ConfigError("oracle.table", "duplicate PER level");
    std::vector<double> g(kGrid);
    for (std::size_t k = 0; k < kGrid; ++k) {
      const double u = (static_cast<double>(k) + 0.5) / kGrid;
      if (u <= kQuantileU[0]) {
        g[k] = r.q[0];
      } else if (u >= kQuantileU[4]) {
        g[k] = r.q[4];
      } else {
        int i = 0;
        while (u > kQuantileU[i + 1]) ++i;
        const double w = (u - kQuantileU[i]) / (kQuantileU[i + 1] - kQuantileU[i]);
        g[k] = r.q[i] + w * (r.q[i + 1] - r.q[i]);
      }
    }
    o.levels_.push_back(r.per_level);
    o.grid_.push_back(std::move(g));
  }
  o.finish_table();
  return o;
}

void EntropyOracle::finish_table() {
  for (auto& g : grid_)
    for (auto& v : g) v = std::clamp(v, 0.0, h_max_);
  // Pointwise running max over levels keeps every quantile monotone in PER.
  for (std::size_t l = 1; l < grid_.size(); ++l)
    for (std::size_t k = 0; k < kGrid; ++k) grid_[l][k] = std::max(grid_[l][k], grid_[l - 1][k]);
}

EntropyOracle EntropyOracle::load_table_csv(const std::filesystem::path& path, double h_min,
                                            int labels) {
  const CsvTable t = read_csv(path);
  const auto lvl = t.column("per_level");
  if (std::find(t.header.begin(), t.header.end(), "sample_entropy") != t.header.end()) {
    const auto col = t.column("sample_entropy");
    std::map<double, std::vector<double>> by_level;
    for (const auto& row : t.rows) by_level[parse_double(row[lvl])].push_back(parse_double(row[col]));
    std::vector<OracleSampleSet> sets;
    for (auto& [level, samples] : by_level) sets.push_back({level, std::move(samples)});
    return from_samples(std::move(sets), h_min, labels);
  }
  const char* names[5] = {"q05", "q25", "q50", "q75", "q95"};
  std::size_t cols[5];
  for (int i = 0; i < 5; ++i) cols[i] = t.column(names[i]);
  std::vector<OracleQuantileRow> rows;
  for (const auto& row : t.rows) {
    OracleQuantileRow r;
    r.per_level = parse_double(row[lvl]);
    for (int i = 0; i < 5; ++i) r.q[i] = parse_double(row[cols[i]]);
    rows.push_back(r);
  }
  return from_quantiles(std::move(rows), h_min, labels);
}

double EntropyOracle::entropy_at(double error_fraction, double u) const {
  const double f = std::clamp(error_fraction, 0.0, 1.0);
  u = std::clamp(u, 0.0, std::nextafter(1.0, 0.0));
  if (parametric_) {
    const auto& p = params_;
    double h = p.h_min * (1.0 + p.distortion_scale * std::pow(f, p.distortion_exponent));
    if (p.noise_sd_nats > 0.0) {
      const double prob = tail_lo_ + u * (1.0 - 2.0 * tail_lo_);
      h += p.noise_sd_nats * -q_inv(prob);
    }
    return std::clamp(h, 0.0, h_max_);
  }

  const auto k = std::min(static_cast<std::size_t>(u * kGrid), kGrid - 1);
  if (f <= levels_.front()) return grid_.front()[k];
  if (f >= levels_.back()) return grid_.back()[k];
  const auto it = std::upper_bound(levels_.begin(), levels_.end(), f);
  const auto hi = static_cast<std::size_t>(it - levels_.begin());
  const auto lo = hi - 1;
  const double w = (f - levels_[lo]) / (levels_[hi] - levels_[lo]);
  return grid_[lo][k] + w * (grid_[hi][k] - grid_[lo][k]);
}

double EntropyOracle::sample_entropy(double error_fraction, RngStream& rng) const {
  return entropy_at(error_fraction, uniform01(rng));
}

double EntropyOracle::mean_entropy(double error_fraction) const {
  constexpr int n = 4096;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += entropy_at(error_fraction, (i + 0.5) / n);
  return s / n;
}

}  // namespace gocoexist
