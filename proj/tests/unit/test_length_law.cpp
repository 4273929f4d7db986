#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "uwalk/length_law.hpp"

using namespace uwalk;

TEST_CASE("parse and print round trip") {
  for (const char* s : {"deterministic:7", "geometric:0.25", "half_normal:10:1000", "empirical:1,0,3"})
    CHECK(LengthLaw::parse(s).to_string() == s);
  CHECK_THROWS(LengthLaw::parse("geometric:1.5"));
  CHECK_THROWS(LengthLaw::parse("poisson:3"));
  CHECK_THROWS(LengthLaw::parse("empirical:0,0"));
}

TEST_CASE("tails") {
  const auto g = LengthLaw::geometric(0.5);
  CHECK(g.tail(0) == 1.0);
  CHECK(g.tail(3) == doctest::Approx(0.125));
  CHECK(g.tail_sum_beyond(3) == doctest::Approx(0.0625 / 0.5));
  const auto e = LengthLaw::empirical({1, 2, 3});
  CHECK(e.tail_exact(1) == Rational(5, 6));
  CHECK(e.tail_exact(3) == 0);
  CHECK(e.max_value() == 2);
  CHECK(LengthLaw::deterministic(4).tail_exact(4) == 1);
  CHECK(LengthLaw::deterministic(4).tail_exact(5) == 0);
  // P(round(s|X|) >= n) = P(|X| >= (n - 1/2)/s).
  const auto h = LengthLaw::scaled_half_normal(10.0, 1000);
  CHECK(h.tail(5) == doctest::Approx(std::erfc(0.45 / std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("sample means match law means") {
  Philox4x32 rng(3, 0);
  for (const auto& law : {LengthLaw::geometric(0.8), LengthLaw::scaled_half_normal(10.0, 1000),
                          LengthLaw::empirical({1, 1, 2}), LengthLaw::deterministic(9)}) {
    double s = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) s += static_cast<double>(law.sample(rng));
    CHECK(s / n == doctest::Approx(law.mean()).epsilon(0.01));
  }
}

TEST_CASE("complete-graph law") {
  const TorusSpec spec(5, 3);
  const auto law = LengthLaw::complete_graph(spec);
  CHECK(law.max_value() == 242);
  CHECK(law.mean() == doctest::Approx(std::sqrt(2.0 / M_PI) * std::sqrt(243.0)).epsilon(0.01));
  Philox4x32 rng(4, 0);
  for (int i = 0; i < 10000; ++i) CHECK(sample_complete_graph_length(spec, rng) <= 243);
}

TEST_CASE("round half to even") {
  CHECK(round_half_even(0.5) == 0);
  CHECK(round_half_even(1.5) == 2);
  CHECK(round_half_even(2.5) == 2);
  CHECK(round_half_even(2.6) == 3);
}
