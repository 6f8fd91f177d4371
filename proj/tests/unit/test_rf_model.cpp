#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "doctest.h"
#include "gocoexist/errors.hpp"
#include "gocoexist/rf_model.hpp"
#include "oracles.hpp"

using namespace gocoexist;

TEST_CASE("noise power from density, noise figure and bandwidth") {
  CHECK(noise_power(-174.0, 1e9, 3.0) == doctest::Approx(7.943282347e-12).epsilon(1e-9));
  CHECK(noise_power(-174.0, 1.0, 0.0) == doctest::Approx(3.981071706e-21).epsilon(1e-9));
  CHECK(noise_power(-174.0, 5e8, 3.0) == doctest::Approx(0.5 * noise_power(-174.0, 1e9, 3.0)));
  CHECK_THROWS_AS(noise_power(-174.0, -1.0, 3.0), DomainError);
}

TEST_CASE("pure LOS single antenna at the reference distance has unit gain") {
  Geometry g;
  g.antennas_g = g.antennas_d = 1;
  FadingParams f;
  f.rician_k = std::numeric_limits<double>::infinity();
  f.path_loss_ref_m = distance(g.ue_g, g.ap_g);
  RngStream rng(3);
  const auto ch = sample_channel(g, f, rng);
  CHECK(ch.g_gg == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Rayleigh MRC gain averages M / beta") {
  Geometry g;
  FadingParams f;
  f.rician_k = 0.0;
  const double beta = std::pow(distance(g.ue_g, g.ap_g) / f.path_loss_ref_m, f.path_loss_exponent);
  ChannelSampler s(g, f);
  RngStream rng(5);
  double acc = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) acc += s.sample(rng).g_gg;
  // Gamma(8, 1/beta): relative sd of the mean is 1/sqrt(8 n).
  CHECK(acc / n * beta == doctest::Approx(8.0).epsilon(5.0 / std::sqrt(8.0 * n)));
}

TEST_CASE("channel sampler matches a brute-force transcription in distribution") {
  Geometry g;
  FadingParams f;
  ChannelSampler s(g, f);
  oracle::BruteForceSampler bf{g, f};
  RngStream a(101);
  std::mt19937_64 b(202);
  std::vector<double> x, y;
  for (int i = 0; i < 4000; ++i) {
    x.push_back(s.sample(a).g_gg);
    y.push_back(bf.g_gg(b));
  }
  // Two-sample KS critical value at alpha = 0.001 for n = m = 4000.
  CHECK(oracle::ks_statistic(x, y) < 1.95 * std::sqrt(2.0 / 4000.0));
}

TEST_CASE("MRC gain equals the squared norm of the own channel") {
  Geometry g;
  FadingParams f;
  ChannelSampler s(g, f);
  RngStream rng(9);
  const auto v = s.sample_vectors(rng);
  const auto ch = combine_mrc(v);
  double n = 0.0;
  for (auto h : v.gg) n += std::norm(h);
  CHECK(ch.g_gg == doctest::Approx(n).epsilon(1e-12));
  CHECK(ch.g_gd >= 0.0);
}

TEST_CASE("SINR definitions") {
  ChannelRealization ch{2.0, 3.0, 4.0, 5.0};
  CHECK(sinr_go(ch, 0.1, 0.2, 1.0) == doctest::Approx(0.2 / 1.6));
  CHECK(sinr_do(ch, 0.1, 0.2, 1.0) == doctest::Approx(0.8 / 1.5));
  CHECK(sinr_do(ch, 0.1, 0.0, 1.0) == 0.0);
}

TEST_CASE("q_inv agrees with the integrated tail") {
  for (double p : {1e-7, 1e-5, 1e-3, 0.01, 0.1, 0.3, 0.5}) {
    CAPTURE(p);
    CHECK(std::abs(q_inv(p) - oracle::q_inv_bisect(p)) < 1e-6);
    CHECK(q_function(q_inv(p)) == doctest::Approx(p).epsilon(1e-9));
  }
  CHECK(q_inv(0.9) == doctest::Approx(-q_inv(0.1)).epsilon(1e-12));
  CHECK_THROWS_AS(q_inv(0.0), DomainError);
  CHECK_THROWS_AS(q_inv(1.0), DomainError);
}

TEST_CASE("finite-blocklength rate") {
  CHECK(fbl_rate(10.0, 1e9, 512.0, 0.5) == doctest::Approx(shannon_rate(10.0, 1e9)).epsilon(1e-14));
  CHECK(fbl_rate(10.0, 1e9, 512.0, 1e-5) < fbl_rate(10.0, 1e9, 512.0, 1e-3));
  CHECK(fbl_rate(1e-4, 1e9, 512.0, 1e-7) == 0.0);
  CHECK(channel_dispersion(0.0) == 0.0);
  const double s = 3.0, n = 512.0, gm = 1e-4;
  const double expect = 1e9 * (std::log2(1 + s) - std::sqrt((1 - 1 / 16.0) / n) * oracle::q_inv_bisect(gm) / std::log(2.0));
  CHECK(fbl_rate(s, 1e9, n, gm) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("batch arithmetic") {
  RadioConfig r;
  CHECK(r.packets_per_batch() == 30720);
  CHECK(r.batch_bits() == 7864320.0);
  CHECK(tx_delay(r.batch_bits(), 1e9) == doctest::Approx(7.86432e-3).epsilon(1e-15));
  CHECK(std::isinf(tx_delay(1.0, 0.0)));
  CHECK(packets_per_batch(1, 257.0, 256.0) == 2);
}

TEST_CASE("power grid spans zero to the maximum") {
  RadioConfig r;
  const auto p = r.power_grid();
  REQUIRE(p.size() == 500);
  CHECK(p.front() == 0.0);
  CHECK(p.back() == doctest::Approx(0.2));
  CHECK(std::is_sorted(p.begin(), p.end()));
}
