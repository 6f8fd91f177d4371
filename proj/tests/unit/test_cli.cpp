#include <filesystem>
#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "gocoexist/csv.hpp"

namespace fs = std::filesystem;

namespace {
struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gocoexist::cli_entry(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("gocoexist_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path small_config(const fs::path& dir, const std::string& extra = "") {
  const auto p = dir / "small.json";
  std::ofstream(p) << R"({"schema_version":1,"slots":400,"window":100,"se_batches":4,"threads":1,)"
                   << R"("radio":{"p_d_points":11},"solver":{"validation_batches":200})" << extra << "}";
  return p;
}
}  // namespace

TEST_CASE("run needs a config or a preset") {
  const auto r = run({"run"});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("gocoexist: error: usage:", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("unknown preset is a usage error") {
  CHECK(run({"run", "--preset", "fig99"}).code == 2);
}

TEST_CASE("bad config reports the key") {
  const auto dir = scratch("bad");
  const auto p = dir / "bad.json";
  std::ofstream(p) << R"({"schema_version":1,"radio":{"bandwidth_hz":-5}})";
  const auto r = run({"run", "--config", p.string(), "--out", (dir / "o").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("radio.bandwidth_hz") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run writes trace, summary and manifest") {
  const auto dir = scratch("run");
  const auto r = run({"run", "--config", small_config(dir).string(), "--out", (dir / "o").string(), "--quiet"});
  REQUIRE(r.code == 0);
  for (const char* f : {"trace.csv", "summary.csv", "manifest.json"}) CHECK(fs::exists(dir / "o" / f));
  CHECK(gocoexist::read_csv(dir / "o" / "trace.csv").rows.size() == 400);
  fs::remove_all(dir);
}

TEST_CASE("frontier accepts a comma-separated omega list") {
  const auto dir = scratch("frontier");
  const auto r = run({"frontier", "--config", small_config(dir).string(), "--omega", "1e-10,1e-9,1e-8", "--out",
                      (dir / "o").string(), "--quiet"});
  REQUIRE(r.code == 0);
  const auto t = gocoexist::read_csv(dir / "o" / "frontier.csv");
  CHECK(t.rows.size() == 3);
  fs::remove_all(dir);
}

TEST_CASE("seed flag overrides the environment") {
  const auto dir = scratch("seed");
  const auto cfg = small_config(dir).string();
  setenv("GOCOEXIST_SEED", "5", 1);
  REQUIRE(run({"run", "--config", cfg, "--out", (dir / "a").string(), "--quiet"}).code == 0);
  REQUIRE(run({"run", "--config", cfg, "--seed", "9", "--out", (dir / "b").string(), "--quiet"}).code == 0);
  unsetenv("GOCOEXIST_SEED");
  std::ifstream a(dir / "a" / "manifest.json"), b(dir / "b" / "manifest.json");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str().find("\"seed\": 5") != std::string::npos);
  CHECK(sb.str().find("\"seed\": 9") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sweep and table subcommands") {
  const auto dir = scratch("sweep");
  const auto cfg = small_config(dir, R"(,"sweep":{"power_grid_w":[0.1,0.2]})").string();
  REQUIRE(run({"sweep", "--config", cfg, "--out", (dir / "s").string(), "--quiet"}).code == 0);
  CHECK(fs::exists(dir / "s" / "grid.csv"));
  REQUIRE(run({"table", "--config", cfg, "--out", (dir / "t").string(), "--quiet"}).code == 0);
  CHECK(gocoexist::read_csv(dir / "t" / "success_table.csv").rows.size() == 13);
  fs::remove_all(dir);
}
