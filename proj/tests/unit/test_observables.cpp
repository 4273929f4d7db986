#include <stdexcept>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "uwalk/observables.hpp"
#include "uwalk/rng.hpp"

using namespace uwalk;

TEST_CASE("moment accumulator agrees with two-pass formulas") {
  Philox4x32 rng(1, 0);
  std::vector<double> x(10007);
  for (auto& v : x) v = rng.uniform() * 10 - 3;
  MomentAccumulator a(64);
  for (double v : x) a.add(v);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  CHECK(a.count() == x.size());
  CHECK(a.mean() == doctest::Approx(mean).epsilon(1e-13));
  CHECK(a.variance() == doctest::Approx(ss / (x.size() - 1)).epsilon(1e-12));
  CHECK(a.blocks().size() < 64);
  CHECK((a.block_size() & (a.block_size() - 1)) == 0);
}

TEST_CASE("merge equals the concatenated stream") {
  Philox4x32 rng(2, 0);
  MomentAccumulator whole(32), left(32), right(32);
  IntHistogram hw, hl, hr;
  for (int i = 0; i < 5000; ++i) {
    const double v = rng.uniform();
    const auto k = static_cast<std::int64_t>(rng.below(7));
    whole.add(v);
    hw.add(k);
    (i < 2048 ? left : right).add(v);
    (i < 2048 ? hl : hr).add(k);
  }
  left.merge(right);
  hl.merge(hr);
  CHECK(left.count() == whole.count());
  CHECK(left.mean() == doctest::Approx(whole.mean()).epsilon(1e-13));
  CHECK(left.variance() == doctest::Approx(whole.variance()).epsilon(1e-12));
  CHECK(hl == hw);
}

TEST_CASE("blocking recovers tau_int") {
  Philox4x32 rng(3, 0);
  MomentAccumulator iid, ar;
  const double rho = 0.9;
  double y = 0;
  for (int i = 0; i < 1 << 21; ++i) {
    const double u = rng.uniform() - 0.5;
    iid.add(u);
    y = rho * y + u;
    ar.add(y);
  }
  CHECK(blocking_errors(iid).tau_int == doctest::Approx(0.5).epsilon(0.15));
  // tau_int = (1 + rho) / (2 (1 - rho)) = 9.5 for AR(1).
  CHECK(blocking_errors(ar).tau_int == doctest::Approx(9.5).epsilon(0.2));
  MomentAccumulator few;
  for (int i = 0; i < 4; ++i) few.add(i);
  CHECK_THROWS_AS(blocking_errors(few), InsufficientData);
}

TEST_CASE("moment ratio of |X|") {
  Philox4x32 rng(4, 0);
  MomentAccumulator a;
  for (int i = 0; i < 400000; ++i) {
    const double u1 = rng.uniform(), u2 = rng.uniform();
    a.add(std::abs(std::sqrt(-2 * std::log(1 - u1)) * std::cos(2 * M_PI * u2)));
  }
  const Estimate r = moment_ratio(a);
  CHECK(std::abs(r.value - std::sqrt(2 / (M_PI - 2))) < 4 * r.stderr_);
  const Estimate v = block_jackknife(a, [](double, double var) { return var; });
  CHECK(std::abs(v.value - (1 - 2 / M_PI)) < 4 * v.stderr_);
}

TEST_CASE("histograms and total variation") {
  IntHistogram h;
  h.add(0, 3);
  h.add(2, 1);
  CHECK(h.mean() == doctest::Approx(0.5));
  CHECK(h.variance() == doctest::Approx(0.75));
  CHECK(h.probability(2) == doctest::Approx(0.25));
  CHECK(total_variation(h, {{0, 0.75}, {2, 0.25}}) == doctest::Approx(0.0));
  CHECK(total_variation(h, {{1, 1.0}}) == doctest::Approx(1.0));
}

TEST_CASE("ECDF") {
  const std::vector<double> x{3, 1, 2, 2};
  const ECDF e = ECDF::from_values(x);
  CHECK(e(0.5) == 0.0);
  CHECK(e(1.0) == doctest::Approx(0.25));
  CHECK(e(2.0) == doctest::Approx(0.75));
  CHECK(e(9.0) == 1.0);
  CHECK(e.sample_mean() == doctest::Approx(2.0));
  const auto st = e.standardized();
  CHECK(st.sample_mean() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(st.sample_sd() == doctest::Approx(1.0));
  // Uniform CDF on [0, 4]: largest gap is at x = 2 from the left or right.
  const double ks = e.ks_distance([](double t) { return std::clamp(t / 4, 0.0, 1.0); });
  CHECK(ks == doctest::Approx(0.25));
  IntHistogram h;
  h.add(1);
  h.add(2, 2);
  h.add(3);
  CHECK(ECDF::from_histogram(h)(2.0) == doctest::Approx(0.75));
}

TEST_CASE("two-point histogram estimates and filters") {
  TwoPointHistogram h(2, TwoPointMode::Visit, KeyFilter{1, true}, 1);
  std::vector<Point> path(4);
  path[1][0] = 1;
  path[2][0] = 2;
  path[3][0] = 2;
  path[3][1] = 1;  // (2,1): outside the l1 ball and off-axis
  for (int i = 0; i < 32; ++i) h.record_visits(path);
  CHECK(h.samples() == 32);
  CHECK(h.tally(Point{}) == 32);
  Point e1{};
  e1[0] = 1;
  CHECK(h.estimate(e1).value == doctest::Approx(1.0));
  CHECK(h.estimate(e1).stderr_ == doctest::Approx(0.0));
  Point far{};
  far[0] = 2;
  far[1] = 1;
  CHECK(h.tally(far) == 0.0);
  CHECK(h.keys().size() == 3);

  TwoPointHistogram empty(3, TwoPointMode::Endpoint);
  CHECK_THROWS_AS(empty.estimate(Point{}), InsufficientData);
}

TEST_CASE("radial profile scaling") {
  TwoPointHistogram h(3, TwoPointMode::Endpoint, KeyFilter{}, 1);
  Point z{};
  z[0] = 2;
  for (int i = 0; i < 16; ++i) {
    h.record_endpoint(Point{}, 0);
    h.record_endpoint(z, 2);
  }
  const auto prof = radial_profile(h, 16, RadialMode::OnAxis);
  // Every k up to the farthest stored axis point is reported, zeros included.
  REQUIRE(prof.size() == 2);
  CHECK(prof[0].value == 0.0);
  CHECK(prof[1].k == 2);
  CHECK(prof[1].xi == doctest::Approx(2.0 / std::pow(16.0, 0.75)));
  CHECK(prof[1].value == doctest::Approx(2.0 * h.estimate(z).value));
}

TEST_CASE("walk observables") {
  const TorusSpec spec(1, 4);
  WalkObservables obs(spec);
  LatticeWalk w = LatticeWalk::on_torus(spec);
  for (int i = 0; i < 7; ++i) w.push(make_step(0, -1));
  obs.record(w);
  obs.record(LatticeWalk::on_torus(spec));
  CHECK(obs.length_moments().mean() == doctest::Approx(3.5));
  CHECK(obs.windings(0).count(1) == 1);
  CHECK(obs.windings(0).count(0) == 1);
  CHECK(obs.torus_endpoints().size() == 2);
}
