#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "gocoexist/compute_model.hpp"
#include "gocoexist/errors.hpp"

using namespace gocoexist;

TEST_CASE("point mass histogram always returns its value") {
  auto m = ComputeDelayModel::histogram({{0.02, 0.02, 1.0}});
  RngStream rng(1);
  for (int i = 0; i < 100; ++i) CHECK(sample_comp_delay(m, rng) == 0.02);
  CHECK(m.min_support() == 0.02);
}

TEST_CASE("offset shifts samples and is replaced, not accumulated") {
  auto m = ComputeDelayModel::histogram({{0.02, 0.02, 1.0}});
  auto a = set_offset(m, 0.005);
  auto b = set_offset(a, 0.007);
  RngStream rng(2);
  CHECK(sample_comp_delay(a, rng) == doctest::Approx(0.025));
  CHECK(sample_comp_delay(b, rng) == doctest::Approx(0.027));
  CHECK(b.offset() == 0.007);
  CHECK_THROWS_AS(set_offset(m, -0.001), DomainError);
}

TEST_CASE("histogram validation") {
  CHECK_THROWS_AS(ComputeDelayModel::histogram({{0.01, 0.02, 0.5}}), ConfigError);
  CHECK_THROWS_AS(ComputeDelayModel::histogram({{0.03, 0.02, 1.0}}), ConfigError);
  CHECK_THROWS_AS(ComputeDelayModel::histogram({{-0.01, 0.02, 1.0}}), ConfigError);
}

TEST_CASE("uniform bin samples match the bin cdf") {
  auto m = ComputeDelayModel::histogram({{0.01, 0.02, 0.25}, {0.02, 0.03, 0.75}});
  CHECK(m.cdf(0.02) == doctest::Approx(0.25));
  CHECK(m.cdf(0.025) == doctest::Approx(0.625));
  CHECK(m.mean() == doctest::Approx(0.25 * 0.015 + 0.75 * 0.025));
  RngStream rng(3);
  int below = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) below += sample_comp_delay(m, rng) <= 0.025;
  CHECK(static_cast<double>(below) / n == doctest::Approx(0.625).epsilon(0.01));
}

TEST_CASE("default synthetic histogram") {
  auto m = ComputeDelayModel::default_synthetic();
  CHECK(m.is_histogram());
  CHECK(m.bins().size() == 18);
  CHECK(m.min_support() == doctest::Approx(0.010));
  CHECK(m.cdf(0.017) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("parametric families") {
  RngStream rng(4);
  auto c = ComputeDelayModel::parametric({DelayFamily::constant, 0.015, 0.0});
  CHECK(c.sample(rng) == 0.015);
  auto u = ComputeDelayModel::parametric({DelayFamily::uniform, 0.01, 0.02}, 0.001);
  for (int i = 0; i < 100; ++i) {
    const double x = u.sample(rng);
    CHECK(x >= 0.011);
    CHECK(x <= 0.021);
  }
  auto e = ComputeDelayModel::parametric({DelayFamily::shifted_exponential, 0.01, 0.005});
  CHECK(e.min_support() == 0.01);
  CHECK(e.mean() == doctest::Approx(0.015));
  CHECK(delay_family_from_string(to_string(DelayFamily::lognormal)) == DelayFamily::lognormal);
}

TEST_CASE("histogram CSV round trip") {
  const auto path = std::filesystem::temp_directory_path() / "gocoexist_hist_rt.csv";
  const auto bins = ComputeDelayModel::default_synthetic().bins();
  write_histogram_csv(bins, path);
  CHECK(load_histogram_csv(path) == bins);
  std::filesystem::remove(path);
}
