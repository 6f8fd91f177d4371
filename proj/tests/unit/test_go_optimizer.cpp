#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gocoexist/go_optimizer.hpp"
#include "oracles.hpp"

using namespace gocoexist;

namespace {
SuccessProbTable flat_table(const std::vector<double>& levels, double p) {
  return {levels, std::vector<double>(levels.size(), p), std::vector<std::uint64_t>(levels.size(), 1)};
}
}  // namespace

TEST_CASE("virtual queue update") {
  CHECK(update_queue({0.0}, 1, 0.8).z == 0.0);
  CHECK(update_queue({0.0}, 0, 0.8).z == doctest::Approx(0.8));
  CHECK(update_queue({1.0}, 1, 0.8).z == doctest::Approx(0.8));
  CHECK(update_queue({1.0}, 0, 0.8).z == doctest::Approx(1.8));
}

TEST_CASE("drift constants") {
  CHECK(drift_constant(0.8) == doctest::Approx(0.32));
  CHECK(drift_constant_success_only(0.8) == doctest::Approx(0.02));
  CHECK(drift_constant(0.3) == doctest::Approx(0.245));
  // A miss from an empty queue needs the larger constant.
  CHECK_FALSE(drift_bound_holds(0.0, 0.8, 0, 0.8, drift_constant_success_only(0.8)));
  CHECK(drift_bound_holds(0.0, 0.8, 0, 0.8, drift_constant(0.8)));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double z = 20.0 * u(rng), e = u(rng) * 0.999;
    const int s = u(rng) < 0.5;
    CHECK(drift_bound_holds(z, update_queue({z}, s, e).z, s, e, drift_constant(e)));
  }
}

TEST_CASE("dpp objective") {
  CHECK(dpp_objective(2.0, 0.9, 1, 1e8, 1e-8) == doctest::Approx(-2.8));
  CHECK(dpp_objective(2.0, 0.9, 0, 1e8, 1e-8) == doctest::Approx(-1.0));
}

TEST_CASE("isotonic projection") {
  std::vector<double> v{0.9, 0.95, 0.5, 0.6, 0.1};
  const std::vector<std::uint64_t> w{1, 1, 1, 1, 1};
  isotonic_nonincreasing(v, w);
  CHECK(v[0] == doctest::Approx(0.925));
  CHECK(v[1] == doctest::Approx(0.925));
  CHECK(v[2] == doctest::Approx(0.55));
  CHECK(v[3] == doctest::Approx(0.55));
  CHECK(v[4] == doctest::Approx(0.1));
  std::vector<double> x{0.2, 0.8};
  const std::vector<std::uint64_t> w2{3, 1};
  isotonic_nonincreasing(x, w2);
  CHECK(x[0] == doctest::Approx(0.35));
}

TEST_CASE("success table for a permissive threshold is all ones") {
  auto o = EntropyOracle::parametric({});
  RadioConfig r;
  RngStream rng(1);
  auto t = build_success_table(o, r.per_grid, -100.0, r.packets_per_batch(), 500, rng);
  for (double p : t.p_success) CHECK(p == 1.0);
  auto t2 = build_success_table(o, r.per_grid, -0.4, r.packets_per_batch(), 2000, rng);
  CHECK(std::is_sorted(t2.p_success.rbegin(), t2.p_success.rend()));
  CHECK(t2.p_success.front() > t2.p_success.back());
}

TEST_CASE("success table CSV round trip") {
  SuccessProbTable t{{1e-7, 1e-3}, {1.0, 0.25}, {10, 20}};
  const auto path = std::filesystem::temp_directory_path() / "gocoexist_table_rt.csv";
  write_success_table_csv(t, path);
  CHECK(load_success_table_csv(path) == t);
  std::filesystem::remove(path);
}

TEST_CASE("solve_slot matches naive enumeration and is invariant to joint scaling") {
  RadioConfig radio;
  radio.p_d_points = 40;
  SolverConfig cfg;
  cfg.per_grid = radio.per_grid;
  cfg.power_grid = radio.power_grid();
  std::vector<double> qi;
  for (double g : cfg.per_grid) qi.push_back(oracle::q_inv_bisect(g));
  ChannelSampler sampler(Geometry{}, FadingParams{});
  GoalRequirements req;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    SuccessProbTable table = flat_table(cfg.per_grid, 0.0);
    for (auto& p : table.p_success) p = u(rng);
    std::sort(table.p_success.rbegin(), table.p_success.rend());
    cfg.omega = std::pow(10.0, -11.0 + 4.0 * u(rng));
    RngStream ch_rng(static_cast<std::uint64_t>(t));
    const auto ch = sampler.sample(ch_rng);
    const double z = 30.0 * u(rng), dc = 0.01 + 0.02 * u(rng);
    const auto a = solve_slot(z, ch, dc, table, cfg, radio, req);
    const auto b = oracle::naive_solve(z, ch, dc, table, cfg, radio, req, qi);
    CHECK(a.gamma_index == b.gamma_index);
    CHECK(a.power_index == b.power_index);
    SolverConfig scaled = cfg;
    scaled.omega *= 4.0;
    const auto c = solve_slot(4.0 * z, ch, dc, table, scaled, radio, req);
    CHECK(c.gamma_index == a.gamma_index);
    CHECK(c.power_index == a.power_index);
  }
}

TEST_CASE("empty queue maximizes DO rate, ties go to the lowest PER") {
  RadioConfig radio;
  radio.p_d_points = 5;
  SolverConfig cfg;
  cfg.per_grid = radio.per_grid;
  cfg.power_grid = radio.power_grid();
  ChannelRealization ch{1e-9, 1e-12, 1e-9, 1e-12};
  const auto d = solve_slot(0.0, ch, 0.015, flat_table(cfg.per_grid, 1.0), cfg, radio, GoalRequirements{});
  CHECK(d.gamma_index == 0);
  CHECK(d.power_index == 4);
}

TEST_CASE("fixed modes restrict the search") {
  RadioConfig radio;
  radio.p_d_points = 5;
  SolverConfig cfg;
  cfg.per_grid = radio.per_grid;
  cfg.power_grid = radio.power_grid();
  cfg.mode = DecisionMode::fixed_both;
  cfg.fixed_gamma = 1e-3;
  cfg.fixed_p_d = cfg.power_grid[2];
  ChannelRealization ch{1e-9, 1e-12, 1e-9, 1e-12};
  const auto d = solve_slot(5.0, ch, 0.015, flat_table(cfg.per_grid, 1.0), cfg, radio, GoalRequirements{});
  CHECK(d.gamma == 1e-3);
  CHECK(d.power_index == 2);
  CHECK(decision_mode_from_string(to_string(DecisionMode::genie)) == DecisionMode::genie);
}

TEST_CASE("bound check") {
  std::vector<double> constant(1000, 5.0);
  auto r = theoretical_bound_check(constant, 0.8);
  CHECK(r.final_ratio == doctest::Approx(0.005));
  CHECK(r.stable);
  CHECK(r.checkpoint_slots.back() == 1000);
  std::vector<double> linear(1000);
  for (std::size_t t = 0; t < linear.size(); ++t) linear[t] = 0.1 * static_cast<double>(t + 1);
  auto l = theoretical_bound_check(linear, 0.8);
  CHECK(l.final_ratio == doctest::Approx(0.1));
  CHECK_FALSE(l.stable);
  CHECK(l.effectiveness_lower_bound == doctest::Approx(0.7));
}
