#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gocoexist/rng.hpp"

namespace gocoexist {

inline constexpr double kSpeedOfLight = 299'792'458.0;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

double distance(Point2 a, Point2 b) noexcept;

/// Node placement and antenna arrays. Both APs carry a uniform linear array
/// along the x axis, centered on the AP coordinate.
struct Geometry {
  Point2 ue_g{5.0, 0.0};
  Point2 ap_g{5.0, 20.0};
  Point2 ue_d{8.0, 0.0};
  Point2 ap_d{8.0, 20.0};
  int antennas_g = 8;
  int antennas_d = 8;
  double spacing_wavelengths = 0.5;
  double carrier_hz = 28e9;

  double wavelength() const noexcept { return kSpeedOfLight / carrier_hz; }
  void validate() const;
  bool operator==(const Geometry&) const = default;
};

/// Reference distance for which beta = (d / d_ref)^exponent includes the
/// free-space loss at 1 m for the given carrier: d_ref = sqrt(lambda / (4 pi)).
double free_space_reference_distance(double carrier_hz) noexcept;

struct FadingParams {
  double rician_k = 3.0;  ///< may be +infinity (pure LOS)
  double path_loss_exponent = 4.0;
  double path_loss_ref_m = free_space_reference_distance(28e9);

  void validate() const;
  bool operator==(const FadingParams&) const = default;
};

/// Squared MRC-combined gains |w_i^H h_ij|^2. First index is the receiving
/// AP, second the transmitting UE: g_gd is DO interference seen at AP_g.
struct ChannelRealization {
  double g_gg = 0.0;
  double g_gd = 0.0;
  double g_dd = 0.0;
  double g_dg = 0.0;
  bool operator==(const ChannelRealization&) const = default;
};

/// Shared-band link parameters for both systems.
struct RadioConfig {
  double bandwidth_hz = 1e9;
  double n0_dbm_hz = -174.0;
  double noise_figure_db = 3.0;
  double p_g_w = 0.1;
  double p_d_max_w = 0.2;
  std::size_t p_d_points = 500;
  std::vector<double> per_grid{1e-7, 1e-6, 1e-5, 1e-4, 2e-4, 4e-4, 8e-4,
                               1e-3, 2e-3, 4e-3, 8e-3, 1e-2, 2e-2};
  double blocklength = 512.0;
  double packet_bits = 256.0;
  double pattern_bits = 64.0 * 64.0 * 3.0 * 32.0;
  std::size_t batch_size = 20;

  /// Evenly spaced DO powers from 0 to p_d_max_w inclusive.
  std::vector<double> power_grid() const;
  double batch_bits() const noexcept { return static_cast<double>(batch_size) * pattern_bits; }
  std::size_t packets_per_batch() const;
  double noise_w() const;

  void validate() const;
  bool operator==(const RadioConfig&) const = default;
};

/// Samples the four effective gains of one slot. Precomputes the LOS steering
/// vectors and path losses of the geometry once.
class ChannelSampler {
 public:
  ChannelSampler(const Geometry& geometry, const FadingParams& fading);

  ChannelRealization sample(RngStream& rng) const;

  /// Draws the raw channel vectors (gg, gd, dd, dg order) without combining.
  struct Vectors {
    std::vector<std::complex<double>> gg, gd, dd, dg;
  };
  Vectors sample_vectors(RngStream& rng) const;

 private:
  struct Link {
    std::vector<std::complex<double>> los;  // already scaled by path loss and K
    double nlos_scale = 0.0;
  };
  static Link make_link(const Geometry& geometry, const FadingParams& fading, Point2 ap,
                        int antennas, Point2 ue);
  static void draw(const Link& link, RngStream& rng, std::vector<std::complex<double>>& out);

  Link gg_, gd_, dd_, dg_;
};

ChannelRealization sample_channel(const Geometry& geometry, const FadingParams& fading,
                                  RngStream& rng);

/// Combines raw vectors with MRC toward the own user at each AP.
ChannelRealization combine_mrc(const ChannelSampler::Vectors& v);

/// Noise power in watts: 10^((n0 + NF - 30) / 10) * W.
double noise_power(double n0_dbm_hz, double bandwidth_hz, double noise_figure_db);

double sinr_go(const ChannelRealization& ch, double p_g, double p_d, double noise_w) noexcept;
double sinr_do(const ChannelRealization& ch, double p_g, double p_d, double noise_w) noexcept;

/// Inverse of the Gaussian upper-tail function Q. Throws DomainError unless 0 < p < 1.
double q_inv(double p);

/// Upper-tail Gaussian probability Q(x) = 0.5 erfc(x / sqrt 2).
double q_function(double x) noexcept;

/// Channel dispersion V = 1 - 1/(1+sinr)^2.
double channel_dispersion(double sinr) noexcept;

/// The SINR-dependent pieces of the finite-blocklength rate, so that a PER
/// sweep at one SINR reuses the log and the square root.
struct FblTerms {
  double capacity = 0.0;  ///< log2(1 + sinr)
  double spread = 0.0;    ///< sqrt(V / n)
};
FblTerms fbl_terms(double sinr, double blocklength) noexcept;
double fbl_rate_from_terms(const FblTerms& terms, double bandwidth_hz, double q_inv_gamma) noexcept;

/// Normal-approximation achievable rate in bit/s, clamped at zero.
double fbl_rate(double sinr, double bandwidth_hz, double blocklength, double gamma);

double shannon_rate(double sinr, double bandwidth_hz) noexcept;

/// batch_bits / rate; +infinity when rate is zero and there is something to send.
double tx_delay(double batch_bits, double rate_bps) noexcept;

std::size_t packets_per_batch(std::size_t batch_size, double pattern_bits, double packet_bits);

}  // namespace gocoexist
