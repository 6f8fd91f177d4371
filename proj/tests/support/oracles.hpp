#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the library's numerical routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "gocoexist/go_optimizer.hpp"
#include "gocoexist/rf_model.hpp"

namespace oracle {

inline double gauss_pdf(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); }

// Upper Gaussian tail by composite Simpson on [z, z + 12].
inline double q_integrated(double z, int intervals = 4000) {
  const double a = z, b = z + 12.0;
  const double h = (b - a) / intervals;
  double s = gauss_pdf(a) + gauss_pdf(b);
  for (int i = 1; i < intervals; ++i) s += gauss_pdf(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Q^{-1}(p) for p in (0, 0.5] by bisection on the integrated tail.
inline double q_inv_bisect(double p) {
  double lo = 0.0, hi = 10.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (q_integrated(mid) > p) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Straight transcription of the channel model: every element, path loss and
// combiner recomputed from scratch per draw, with its own RNG usage.
struct BruteForceSampler {
  gocoexist::Geometry geo;
  gocoexist::FadingParams fad;

  std::vector<std::complex<double>> vec(std::mt19937_64& rng, gocoexist::Point2 ap, int m_count,
                                        gocoexist::Point2 ue) const {
    const double c = 299792458.0;
    const double lambda = c / geo.carrier_hz;
    const double d = std::sqrt((ue.x - ap.x) * (ue.x - ap.x) + (ue.y - ap.y) * (ue.y - ap.y));
    const double beta = std::pow(d / fad.path_loss_ref_m, fad.path_loss_exponent);
    const double k = fad.rician_k;
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    std::vector<std::complex<double>> h(m_count);
    for (int m = 0; m < m_count; ++m) {
      const double ex = ap.x + (m - (m_count - 1) / 2.0) * geo.spacing_wavelengths * lambda;
      const double dm = std::sqrt((ue.x - ex) * (ue.x - ex) + (ue.y - ap.y) * (ue.y - ap.y));
      const std::complex<double> los = std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * dm / lambda));
      const std::complex<double> nlos(n(rng), n(rng));
      h[m] = std::sqrt(1.0 / beta) / std::sqrt(k + 1.0) * (std::sqrt(k) * los + nlos);
    }
    return h;
  }

  double g_gg(std::mt19937_64& rng) const {
    const auto h = vec(rng, geo.ap_g, geo.antennas_g, geo.ue_g);
    const auto w = h;  // MRC, normalized below
    double nrm = 0.0;
    for (auto x : w) nrm += std::norm(x);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) acc += std::conj(w[i]) / std::sqrt(nrm) * h[i];
    return std::norm(acc);
  }
};

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

// Row-major double loop over the decision grid, first strict minimum wins.
// Rates are recomputed from the textbook formulas; `q_inv_levels[i]` is the
// tail inverse for per_grid[i] (e.g. from q_inv_bisect).
inline gocoexist::SlotDecision naive_solve(double z, const gocoexist::ChannelRealization& ch, double d_comp,
                                           const gocoexist::SuccessProbTable& table,
                                           const gocoexist::SolverConfig& cfg, const gocoexist::RadioConfig& radio,
                                           const gocoexist::GoalRequirements& req,
                                           const std::vector<double>& q_inv_levels,
                                           const std::vector<double>& genie_theta = {}) {
  using namespace gocoexist;
  const double noise = std::pow(10.0, (radio.n0_dbm_hz + radio.noise_figure_db - 30.0) / 10.0) * radio.bandwidth_hz;
  const double bits = static_cast<double>(radio.batch_size) * radio.pattern_bits;
  SlotDecision best;
  best.objective = std::numeric_limits<double>::infinity();
  bool have = false;
  for (std::size_t i = 0; i < cfg.per_grid.size(); ++i) {
    if ((cfg.mode == DecisionMode::fixed_per || cfg.mode == DecisionMode::fixed_both) &&
        cfg.per_grid[i] != cfg.fixed_gamma)
      continue;
    for (std::size_t j = 0; j < cfg.power_grid.size(); ++j) {
      if (cfg.mode == DecisionMode::fixed_both && cfg.power_grid[j] != cfg.fixed_p_d) continue;
      const double pd = cfg.power_grid[j];
      const double s_go = ch.g_gg * radio.p_g_w / (noise + ch.g_gd * pd);
      const double s_do = ch.g_dd * pd / (noise + ch.g_dg * radio.p_g_w);
      const double v = 1.0 - 1.0 / ((1.0 + s_go) * (1.0 + s_go));
      const double rate = std::max(0.0, radio.bandwidth_hz * (std::log2(1.0 + s_go) -
                                                              std::sqrt(v / radio.blocklength) * q_inv_levels[i] /
                                                                  std::log(2.0)));
      const double delay = rate > 0.0 ? bits / rate : std::numeric_limits<double>::infinity();
      const int ok = delay + d_comp <= req.d_max_s ? 1 : 0;
      const double p = cfg.mode == DecisionMode::genie ? (genie_theta[i] >= req.theta_th ? 1.0 : 0.0)
                                                       : table.p_success[i];
      const double rd = radio.bandwidth_hz * std::log2(1.0 + s_do);
      const double obj = -z * p * ok - cfg.omega * rd;
      if (!have || obj < best.objective) {
        best = {i, j, cfg.per_grid[i], pd, obj};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace oracle
