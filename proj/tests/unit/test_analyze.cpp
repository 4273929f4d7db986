#include <fstream>
#include <stdexcept>
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "uwalk/analyze.hpp"
#include "uwalk/simulate.hpp"

using namespace uwalk;
namespace fs = std::filesystem;

namespace {
RunTablesIn planted(const std::vector<std::int64_t>& sizes) {
  RunTablesIn r;
  r.model = "saw";
  r.dimension = 5;
  for (auto L : sizes) {
    const double x = static_cast<double>(L);
    r.moments.push_back({"length_mean", L, "", 2 * std::pow(x, 2.5), 1e-3 * std::pow(x, 2.5), 1000});
    r.moments.push_back({"length_variance", L, "", 0.6 * std::pow(x, 5), 1e-3 * std::pow(x, 5), 1000});
    r.moments.push_back({"moment_ratio", L, "", phi_constant() + 0.1, 0.01, 1000});
    for (int a = 0; a < 5; ++a)
      r.winding.push_back({"winding_mean", L, "axis=" + std::to_string(a), 0.3 * std::pow(x, 0.25), 1e-3, 1000});
  }
  return r;
}

const ResultRow* find(const std::vector<ResultRow>& rows, const std::string& obs, const std::string& key) {
  for (const auto& r : rows)
    if (r.observable == obs && r.key == key) return &r;
  return nullptr;
}
}  // namespace

TEST_CASE("planted exponents are recovered") {
  const AnalysisReport rep = analyze({planted({5, 7, 9, 11})});
  const ResultRow* mean = find(rep.fits, "fit_exponent", "saw;d=5;length_mean");
  REQUIRE(mean);
  CHECK(mean->estimate == doctest::Approx(2.5).epsilon(1e-9));
  CHECK(mean->L == 5);
  CHECK(find(rep.fits, "fit_exponent", "saw;d=5;length_variance")->estimate == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(find(rep.fits, "fit_exponent", "saw;d=5;winding_mean")->estimate == doctest::Approx(0.25).epsilon(1e-9));
  const ResultRow* c = find(rep.fits, "winding_collapse_constant", "saw;d=5;power=0.25");
  REQUIRE(c);
  CHECK(c->estimate == doctest::Approx(0.3));
  CHECK(find(rep.fits, "moment_ratio_minus_phi", "saw;d=5")->estimate == doctest::Approx(0.1));
}

TEST_CASE("too few sizes gives a notice, not a fit") {
  const AnalysisReport rep = analyze({planted({5})});
  CHECK_FALSE(find(rep.fits, "fit_exponent", "saw;d=5;length_mean"));
  bool noticed = false;
  for (const auto& n : rep.notices) noticed = noticed || n.find("power-law fit skipped") != std::string::npos;
  CHECK(noticed);
}

TEST_CASE("runs are pooled across directories") {
  const AnalysisReport rep = analyze({planted({5, 7}), planted({9})});
  REQUIRE(find(rep.fits, "fit_exponent", "saw;d=5;length_mean"));
}

TEST_CASE("missing inputs are reported by name") {
  const fs::path dir = fs::temp_directory_path() / "uwalk_test_analyze";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto error = [&] {
    try {
      load_run_dir(dir.string());
    } catch (const std::exception& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error().find("summary.json") != std::string::npos);
  {
    std::ofstream(dir / "summary.json") << R"({"model": "rlrw", "dimension": 3})";
  }
  CHECK(error().find("moments.csv") != std::string::npos);
  {
    std::ofstream(dir / "moments.csv") << "observable,L,key,estimate,n_samples\n";
  }
  const std::string e = error();
  CHECK(e.find("moments.csv") != std::string::npos);
  CHECK(e.find("stderr") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("analysis of a real run directory") {
  RunConfig c;
  c.model = Model::Rlrw;
  c.dimension = 3;
  c.sizes = {4, 6, 8};
  c.length_law = "geometric:0.9";
  c.measurements_per_chain = 2000;
  const fs::path dir = fs::temp_directory_path() / "uwalk_test_analyze_run";
  fs::remove_all(dir);
  write_run(run_simulation(c), dir.string());
  AnalyzeOptions opts;
  opts.collapse = CollapseParams{1, 1, 0, 3};
  const AnalysisReport rep = analyze({load_run_dir(dir.string())}, opts);
  CHECK_FALSE(rep.profiles.empty());
  CHECK(find(rep.fits, "fit_exponent", "rlrw;d=3;length_mean"));
  write_analysis(rep, (dir / "analysis").string());
  CHECK(fs::exists(dir / "analysis" / "fits.csv"));
  fs::remove_all(dir);
}
