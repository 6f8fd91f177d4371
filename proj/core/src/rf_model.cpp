#include "gocoexist/rf_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gocoexist/errors.hpp"

namespace gocoexist {

double distance(Point2 a, Point2 b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

double free_space_reference_distance(double carrier_hz) noexcept {
  const double lambda = kSpeedOfLight / carrier_hz;
  return std::sqrt(lambda / (4.0 * std::numbers::pi));
}

void Geometry::validate() const {
  if (antennas_g < 1) throw ConfigError("geometry.antennas_g", "must be >= 1");
  if (antennas_d < 1) throw ConfigError("geometry.antennas_d", "must be >= 1");
  if (!(carrier_hz > 0.0)) throw ConfigError("geometry.carrier_hz", "must be > 0");
  if (!(spacing_wavelengths > 0.0))
    throw ConfigError("geometry.spacing_wavelengths", "must be > 0");
  const auto check = [](Point2 ue, Point2 ap, const char* key) {
    if (!(distance(ue, ap) > 0.0)) throw ConfigError(key, "UE and AP must not coincide");
  };
  check(ue_g, ap_g, "geometry.ue_g");
  check(ue_d, ap_g, "geometry.ue_d");
  check(ue_d, ap_d, "geometry.ue_d");
  check(ue_g, ap_d, "geometry.ue_g");
}

void FadingParams::validate() const {
  if (!(rician_k >= 0.0)) throw ConfigError("fading.rician_k", "must be >= 0");
  if (!(path_loss_exponent > 0.0)) throw ConfigError("fading.path_loss_exponent", "must be > 0");
  if (!(path_loss_ref_m > 0.0)) throw ConfigError("fading.path_loss_ref_m", "must be > 0");
}

std::vector<double> RadioConfig::power_grid() const {
  std::vector<double> grid(p_d_points);
  if (p_d_points == 1) {
    grid[0] = p_d_max_w;
    return grid;
  }
  const double step = p_d_max_w / static_cast<double>(p_d_points - 1);
  for (std::size_t i = 0; i < p_d_points; ++i) grid[i] = step * static_cast<double>(i);
  grid.back() = p_d_max_w;
  return grid;
}

std::size_t RadioConfig::packets_per_batch() const {
  return gocoexist::packets_per_batch(batch_size, pattern_bits, packet_bits);
}

double RadioConfig::noise_w() const { return noise_power(n0_dbm_hz, bandwidth_hz, noise_figure_db); }

void RadioConfig::validate() const {
  if (!(bandwidth_hz > 0.0)) throw ConfigError("radio.bandwidth_hz", "must be > 0");
  if (!std::isfinite(n0_dbm_hz)) throw ConfigError("radio.n0_dbm_hz", "must be finite");
  if (!std::isfinite(noise_figure_db)) throw ConfigError("radio.noise_figure_db", "must be finite");
  if (!(p_g_w >= 0.0)) throw ConfigError("radio.p_g_w", "must be >= 0");
  if (!(p_d_max_w >= 0.0)) throw ConfigError("radio.p_d_max_w", "must be >= 0");
  if (p_d_points < 2) throw ConfigError("radio.p_d_points", "must be >= 2 (grid spans 0..p_d_max_w)");
  if (per_grid.empty()) throw ConfigError("radio.per_grid", "must not be empty");
  for (std::size_t i = 0; i < per_grid.size(); ++i) {
    if (!(per_grid[i] > 0.0 && per_grid[i] < 0.5))
      throw ConfigError("radio.per_grid", "values must lie in (0, 0.5)");
    if (i > 0 && !(per_grid[i] > per_grid[i - 1]))
      throw ConfigError("radio.per_grid", "values must be strictly ascending");
  }
  if (!(blocklength >= 1.0)) throw ConfigError("radio.blocklength", "must be >= 1");
  if (!(packet_bits > 0.0)) throw ConfigError("radio.packet_bits", "must be > 0");
  if (!(pattern_bits > 0.0)) throw ConfigError("radio.pattern_bits", "must be > 0");
  if (batch_size < 1) throw ConfigError("radio.batch_size", "must be >= 1");
}

// ---------------------------------------------------------------------------

ChannelSampler::ChannelSampler(const Geometry& geometry, const FadingParams& fading)
    : gg_(make_link(geometry, fading, geometry.ap_g, geometry.antennas_g, geometry.ue_g)),
      gd_(make_link(geometry, fading, geometry.ap_g, geometry.antennas_g, geometry.ue_d)),
      dd_(make_link(geometry, fading, geometry.ap_d, geometry.antennas_d, geometry.ue_d)),
      dg_(make_link(geometry, fading, geometry.ap_d, geometry.antennas_d, geometry.ue_g)) {}

ChannelSampler::Link ChannelSampler::make_link(const Geometry& geometry,
                                               const FadingParams& fading, Point2 ap,
                                               int antennas, Point2 ue) {
  const double lambda = geometry.wavelength();
  const double beta = std::pow(distance(ue, ap) / fading.path_loss_ref_m, fading.path_loss_exponent);
  const double amplitude = std::sqrt(1.0 / beta);

  double los_weight = 1.0;
  double nlos_weight = 0.0;
  if (std::isfinite(fading.rician_k)) {
    los_weight = std::sqrt(fading.rician_k / (fading.rician_k + 1.0));
    nlos_weight = std::sqrt(1.0 / (fading.rician_k + 1.0));
  }

  Link link;
  link.los.resize(static_cast<std::size_t>(antennas));
  const double center = 0.5 * static_cast<double>(antennas - 1);
  for (int m = 0; m < antennas; ++m) {
    const Point2 element{ap.x + (static_cast<double>(m) - center) * geometry.spacing_wavelengths * lambda,
                         ap.y};
    const double phase = -2.0 * std::numbers::pi * distance(ue, element) / lambda;
    link.los[static_cast<std::size_t>(m)] = std::polar(amplitude * los_weight, phase);
  }
  // Each quadrature of CN(0,1) has variance 1/2.
  link.nlos_scale = amplitude * nlos_weight * std::sqrt(0.5);
  return link;
}

void ChannelSampler::draw(const Link& link, RngStream& rng, std::vector<std::complex<double>>& out) {
  std::normal_distribution<double> normal(0.0, 1.0);
  out.resize(link.los.size());
  for (std::size_t m = 0; m < link.los.size(); ++m) {
    const double re = normal(rng);
    const double im = normal(rng);
    out[m] = link.los[m] + link.nlos_scale * std::complex<double>(re, im);
  }
}

ChannelSampler::Vectors ChannelSampler::sample_vectors(RngStream& rng) const {
  Vectors v;
  draw(gg_, rng, v.gg);
  draw(gd_, rng, v.gd);
  draw(dd_, rng, v.dd);
  draw(dg_, rng, v.dg);
  return v;
}

ChannelRealization ChannelSampler::sample(RngStream& rng) const {
  return combine_mrc(sample_vectors(rng));
}

namespace {

double squared_norm(const std::vector<std::complex<double>>& h) {
  double s = 0.0;
  for (const auto& x : h) s += std::norm(x);
  return s;
}

// |h_own^H h_other|^2 / ||h_own||^2, i.e. the gain after the unit-norm MRC combiner.
double combined_cross_gain(const std::vector<std::complex<double>>& own, double own_norm2,
                           const std::vector<std::complex<double>>& other) {
  if (own_norm2 <= 0.0) return 0.0;
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t m = 0; m < own.size(); ++m) acc += std::conj(own[m]) * other[m];
  return std::norm(acc) / own_norm2;
}

}  // namespace

ChannelRealization combine_mrc(const ChannelSampler::Vectors& v) {
  ChannelRealization ch;
  ch.g_gg = squared_norm(v.gg);
  ch.g_dd = squared_norm(v.dd);
  ch.g_gd = combined_cross_gain(v.gg, ch.g_gg, v.gd);
  ch.g_dg = combined_cross_gain(v.dd, ch.g_dd, v.dg);
  return ch;
}

ChannelRealization sample_channel(const Geometry& geometry, const FadingParams& fading,
                                  RngStream& rng) {
  return ChannelSampler(geometry, fading).sample(rng);
}

// ---------------------------------------------------------------------------

double noise_power(double n0_dbm_hz, double bandwidth_hz, double noise_figure_db) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("noise_power: bandwidth must be > 0");
  return std::pow(10.0, (n0_dbm_hz + noise_figure_db - 30.0) / 10.0) * bandwidth_hz;
}

double sinr_go(const ChannelRealization& ch, double p_g, double p_d, double noise_w) noexcept {
  return ch.g_gg * p_g / (noise_w + ch.g_gd * p_d);
}

double sinr_do(const ChannelRealization& ch, double p_g, double p_d, double noise_w) noexcept {
  return ch.g_dd * p_d / (noise_w + ch.g_dg * p_g);
}

double q_function(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

namespace {

// Lower-tail standard normal quantile, rational approximation (relative
// error ~1e-9), refined by the caller.
double normal_quantile_rational(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double q_inv(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("q_inv: probability must lie in (0, 1), got " + std::to_string(p));
  if (p > 0.5) return -q_inv(1.0 - p);

  // Upper tail: Q^{-1}(p) = -Phi^{-1}(p), evaluated on p directly to keep
  // relative accuracy for tiny p.
  double z = -normal_quantile_rational(p) + 0.0;
  // One Halley step on g(z) = Q(z) - p.
  const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  if (phi > 0.0) {
    const double u = (q_function(z) - p) / -phi;
    z -= u / (1.0 + 0.5 * u * z);
  }
  return z + 0.0;
}

double channel_dispersion(double sinr) noexcept {
  const double t = 1.0 + sinr;
  return 1.0 - 1.0 / (t * t);
}

FblTerms fbl_terms(double sinr, double blocklength) noexcept {
  return FblTerms{std::log2(1.0 + sinr), std::sqrt(channel_dispersion(sinr) / blocklength)};
}

double fbl_rate_from_terms(const FblTerms& terms, double bandwidth_hz, double q_inv_gamma) noexcept {
  const double backoff = terms.spread * q_inv_gamma / std::numbers::ln2;
  return std::max(0.0, bandwidth_hz * (terms.capacity - backoff));
}

double fbl_rate(double sinr, double bandwidth_hz, double blocklength, double gamma) {
  return fbl_rate_from_terms(fbl_terms(sinr, blocklength), bandwidth_hz, q_inv(gamma));
}

double shannon_rate(double sinr, double bandwidth_hz) noexcept {
  return bandwidth_hz * std::log2(1.0 + sinr);
}

double tx_delay(double batch_bits, double rate_bps) noexcept {
  if (batch_bits <= 0.0) return 0.0;
  if (rate_bps <= 0.0) return std::numeric_limits<double>::infinity();
  return batch_bits / rate_bps;
}

std::size_t packets_per_batch(std::size_t batch_size, double pattern_bits, double packet_bits) {
  if (!(packet_bits > 0.0)) throw DomainError("packets_per_batch: packet size must be > 0");
  const double total = static_cast<double>(batch_size) * pattern_bits;
  return static_cast<std::size_t>(std::ceil(total / packet_bits));
}

}  // namespace gocoexist
