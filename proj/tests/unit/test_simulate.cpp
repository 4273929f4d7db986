#include <stdexcept>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "uwalk/simulate.hpp"

using namespace uwalk;
namespace fs = std::filesystem;

namespace {
RunConfig small(Model m) {
  RunConfig c;
  c.model = m;
  c.dimension = 3;
  c.sizes = {4};
  c.fugacity = 0.2;
  c.tanh_beta = 0.2;
  c.length_law = "geometric:0.8";
  c.burn_in_sweeps = 2;
  c.measure_interval_sweeps = 0.25;
  c.measurements_per_chain = 200;
  c.chains = 2;
  return c;
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("uwalk_test_" + name);
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("zero-length RLRW") {
  RunConfig c = small(Model::Rlrw);
  c.length_law = "deterministic:0";
  const RunResult r = run_simulation(c);
  REQUIRE(r.sizes.size() == 1);
  const auto& obs = r.sizes[0].observables;
  CHECK(obs.lengths().counts() == std::map<std::int64_t, std::uint64_t>{{0, 400}});
  REQUIRE(r.sizes[0].visits);
  CHECK(r.sizes[0].visits->estimate(Point{}).value == 1.0);
}

TEST_CASE("every model runs and tabulates") {
  for (Model m : {Model::Saw, Model::IsingWorm, Model::Rlrw, Model::Rllerw}) {
    const RunResult r = run_simulation(small(m));
    const RunTables t = tabulate(r);
    CHECK(t.moments.size() >= 4);
    CHECK(t.winding.size() >= 3);
    CHECK_FALSE(t.two_point.empty());
    CHECK_FALSE(t.length_histogram.empty());
    std::uint64_t total = 0;
    for (const auto& row : t.length_histogram) total += static_cast<std::uint64_t>(row.estimate);
    CHECK(total == 400);
  }
}

TEST_CASE("chains are reproducible and independent") {
  const RunConfig c = small(Model::Saw);
  const SizeResult a = run_chain(c, 4, 0), b = run_chain(c, 4, 0), other = run_chain(c, 4, 1);
  CHECK(a.observables.lengths() == b.observables.lengths());
  CHECK_FALSE(a.observables.lengths() == other.observables.lengths());
}

TEST_CASE("point keys") {
  Point z{};
  z[0] = -3;
  z[2] = 12;
  CHECK(point_key(z, 3) == "(-3,0,12)");
  int d = 0;
  CHECK(parse_point_key("(-3,0,12)", d) == z);
  CHECK(d == 3);
  CHECK_THROWS(parse_point_key("(1,x)", d));
}

TEST_CASE("write_run writes every table") {
  const fs::path dir = temp_dir("write");
  write_run(run_simulation(small(Model::Rlrw)), dir.string());
  for (const char* f : {"moments.csv", "winding.csv", "two_point.csv", "ecdf.csv", "length_hist.csv", "summary.json"})
    CHECK(fs::exists(dir / f));
  std::ifstream s(dir / "summary.json");
  const std::string text((std::istreambuf_iterator<char>(s)), {});
  CHECK(text.find("\"model\": \"rlrw\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("write_run failure leaves a manifest") {
  const fs::path dir = temp_dir("fail");
  fs::create_directories(dir / "moments.csv");
  CHECK_THROWS(write_run(run_simulation(small(Model::Rlrw)), dir.string()));
  CHECK(fs::exists(dir / "manifest.txt"));
  fs::remove_all(dir);
}
