#include <cmath>
#include <vector>

#include "doctest.h"
#include "gocoexist/errors.hpp"
#include "gocoexist/goal_metrics.hpp"

using namespace gocoexist;

TEST_CASE("entropy") {
  const std::vector<double> onehot{1.0, 0.0, 0.0};
  const std::vector<double> flat(10, 0.1);
  CHECK(entropy(onehot) == 0.0);
  CHECK(entropy(flat) == doctest::Approx(std::log(10.0)));
  const std::vector<double> bad{0.5, 0.6};
  CHECK_THROWS_AS(entropy(bad), DomainError);
}

TEST_CASE("nrei") {
  CHECK(nrei(0.3, 0.3) == 0.0);
  CHECK(nrei(0.45, 0.3) == doctest::Approx(-0.5));
  CHECK(nrei(0.6, 0.3) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(nrei(0.5, 0.0), DomainError);
}

TEST_CASE("batch average entropy") {
  const std::vector<double> v{0.2, 0.4};
  CHECK(batch_avg_entropy(v) == doctest::Approx(0.3));
  CHECK_THROWS_AS(batch_avg_entropy(std::vector<double>{}), DomainError);
}

TEST_CASE("packet error draws have the binomial mean") {
  RngStream rng(8);
  double acc = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) acc += static_cast<double>(sample_packet_errors(30720, 1e-3, rng));
  // mean 30.72, sd of the mean sqrt(30.69 / n)
  CHECK(acc / n == doctest::Approx(30.72).epsilon(4.0 * std::sqrt(30.69 / n) / 30.72));
  CHECK(sample_packet_errors(100, 0.0, rng) == 0);
}

TEST_CASE("noiseless linear oracle") {
  ParametricOracleParams p;
  p.noise_sd_nats = 0.0;
  p.distortion_scale = 2.0;
  p.distortion_exponent = 1.0;
  auto o = EntropyOracle::parametric(p);
  RngStream rng(1);
  CHECK(o.sample_entropy(0.25, rng) == doctest::Approx(1.5 * p.h_min));
  CHECK(oracle_theta(o, 0.25, rng) == doctest::Approx(-0.5));
  CHECK(oracle_theta(o, 0.0, rng) == doctest::Approx(0.0));
}

TEST_CASE("parametric oracle mean entropy is non-decreasing in the error fraction") {
  auto o = EntropyOracle::parametric({});
  double prev = 0.0;
  for (double f = 0.0; f <= 0.02; f += 0.001) {
    const double m = o.mean_entropy(f);
    CHECK(m >= prev - 1e-12);
    prev = m;
  }
}

TEST_CASE("goal success and cost") {
  GoalRequirements r;
  CHECK(goal_success(-0.3, r, 0.04) == 1);
  CHECK(goal_success(-0.5, r, 0.04) == 0);
  CHECK(goal_success(-0.3, r, 0.05) == 0);
  CHECK(goal_success(-0.4, r, 0.045) == 1);
  const std::vector<int> h{1, 1, 0, 1};
  CHECK(effectiveness(h) == 0.75);
  CHECK(goal_cost(0.5, 1.0) == 0.5);
  CHECK(goal_cost(1.0 + 1e-12, 1.0) == 0.0);
  CHECK_THROWS_AS(goal_cost(1.0, 0.0), DomainError);
}
