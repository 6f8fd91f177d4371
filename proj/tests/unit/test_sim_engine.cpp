#include <cmath>
#include <vector>

#include "doctest.h"
#include "gocoexist/errors.hpp"
#include "gocoexist/presets.hpp"
#include "gocoexist/sim_engine.hpp"

using namespace gocoexist;

namespace {
ScenarioConfig small(std::uint64_t slots = 2000) {
  ScenarioConfig c = make_preset("default");
  c.slots = slots;
  c.window = std::min<std::size_t>(c.window, slots);
  c.threads = 1;
  c.radio.p_d_points = 21;
  c.solver.validation_batches = 500;
  c.se_batches = 10;
  return c;
}
}  // namespace

TEST_CASE("moving average") {
  const std::vector<double> x{1, 2, 3, 4};
  auto m = moving_average(x, 2);
  CHECK(std::isnan(m[0]));
  CHECK(m[1] == 1.5);
  CHECK(m[3] == 3.5);
  auto full = moving_average(x, 4);
  CHECK(full[3] == 2.5);
  CHECK_THROWS_AS(moving_average(x, 0), DomainError);
  CHECK_THROWS_AS(moving_average(x, 5), DomainError);
}

TEST_CASE("single slot with a trivial requirement succeeds") {
  ScenarioConfig c = small(1);
  c.window = 1;
  c.se_batches = 2;
  c.requirements.theta_th = -100.0;
  c.requirements.d_max_s = 10.0;
  auto log = run_adaptive(c);
  REQUIRE(log.size() == 1);
  CHECK(log.outcomes[0].success == 1);
}

TEST_CASE("no GO interference and no effectiveness target gives zero cost") {
  ScenarioConfig c = small();
  c.radio.p_g_w = 0.0;
  c.requirements.e_th = 0.0;
  auto s = summarize(run_adaptive(c), c.se_batches);
  CHECK(s.cost == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("grid delay limits") {
  ScenarioConfig c = small(500);
  c.mode = RunMode::grid_sweep;
  c.sweep.power_grid_w = {0.0, 0.2};
  c.sweep.d_max_grid_s = {0.0, 10.0};
  c.sweep.theta_grid = {-100.0};
  auto g = run_grid(c);
  for (std::size_t i = 0; i < g.gammas.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(g.eff(i, j, 0, 0) == 0.0);
      CHECK(g.eff(i, j, 1, 0) == 1.0);
    }
}

TEST_CASE("runs are deterministic for a seed and differ across seeds") {
  ScenarioConfig c = small();
  auto a = run_adaptive(c), b = run_adaptive(c);
  REQUIRE(a.size() == b.size());
  bool same = true;
  for (std::size_t t = 0; t < a.size(); ++t)
    same = same && a.outcomes[t].r_d_bps == b.outcomes[t].r_d_bps && a.z[t] == b.z[t];
  CHECK(same);
  c.seed = 2;
  auto d = run_adaptive(c);
  bool differs = false;
  for (std::size_t t = 0; t < a.size(); ++t) differs = differs || a.outcomes[t].r_d_bps != d.outcomes[t].r_d_bps;
  CHECK(differs);
}

TEST_CASE("grid results do not depend on thread count") {
  ScenarioConfig c = small(1000);
  c.mode = RunMode::grid_sweep;
  c.sweep.power_grid_w = {0.1, 0.2};
  c.threads = 1;
  auto a = run_grid(c);
  c.threads = 3;
  auto b = run_grid(c);
  CHECK(a.success == b.success);
  CHECK(a.cost == b.cost);
}

TEST_CASE("events change requirements mid-run") {
  ScenarioConfig c = small(3000);
  c.events = {{1000, EventKind::set_e_th, 0.85}, {2000, EventKind::set_compute_offset, 0.005}};
  auto log = run_adaptive(c);
  CHECK(log.e_th[999] == doctest::Approx(0.8));
  CHECK(log.e_th[1000] == doctest::Approx(0.85));
  CHECK(log.outcomes[2500].d_comp_s >= 0.015);
}

TEST_CASE("queue update is applied every slot") {
  ScenarioConfig c = small();
  auto log = run_adaptive(c);
  double z = 0.0;
  for (std::size_t t = 0; t < log.size(); ++t) {
    z = std::max(0.0, z - log.outcomes[t].success + log.e_th[t]);
    CHECK(log.z[t] == doctest::Approx(z).epsilon(1e-12));
  }
  auto s = summarize(log, c.se_batches);
  CHECK(s.drift_bound_ok);
}

TEST_CASE("bandwidth split covers the fraction grid") {
  ScenarioConfig c = small(500);
  c.mode = RunMode::bandwidth_split;
  c.split.fractions = {0.2, 0.5, 0.8};
  auto r = run_bandwidth_split(c);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].cost < r.rows[2].cost);
  CHECK(r.rows[0].effectiveness <= r.rows[2].effectiveness);
}
