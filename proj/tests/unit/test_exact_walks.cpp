#include <stdexcept>
#include "doctest.h"
#include "uwalk/exact_walks.hpp"

using namespace uwalk;

namespace {
const std::vector<std::pair<TorusSpec, LengthLaw>>& rlrw_cases() {
  static const std::vector<std::pair<TorusSpec, LengthLaw>> cases{
      {TorusSpec(1, 4), LengthLaw::deterministic(5)},
      {TorusSpec(2, 3), LengthLaw::empirical({1, 1, 1, 1, 1})},
      {TorusSpec(2, 2), LengthLaw::empirical({1, 2, 3, 4, 5})},
      {TorusSpec(3, 2), LengthLaw::deterministic(3)},
  };
  return cases;
}
}  // namespace

TEST_CASE("RLRW: weight sums equal expected visits") {
  for (const auto& [spec, law] : rlrw_cases()) {
    const ExactTables a = rlrw_weight_sums(spec, law);
    const ExactTables b = rlrw_expected_visits(spec, law);
    CHECK(a.torus == b.torus);
    CHECK(a.unwrapped == b.unwrapped);
    Rational total = 0;
    for (const auto& [x, v] : a.torus) total += v;
    // Expected number of visited sites counted with multiplicity is E N + 1.
    Rational mean = 0;
    for (std::uint64_t n = 1; n <= law.max_value(); ++n) mean += law.tail_exact(n);
    CHECK(total == mean + 1);
  }
  const ExactTables d1 = rlrw_expected_visits(TorusSpec(1, 4), LengthLaw::deterministic(2));
  CHECK(d1.unwrapped.at(Point{}) == Rational(3, 2));
}

TEST_CASE("RLLERW exact law") {
  const TorusSpec spec(2, 3);
  const RllerwLaw one = exact_rllerw(spec, LengthLaw::deterministic(1));
  CHECK(one.law.size() == 4);
  for (const auto& [tau, p] : one.law) CHECK(p == Rational(1, 4));

  const RllerwLaw ex = exact_rllerw(spec, LengthLaw::empirical({1, 1, 1, 1, 1}));
  Rational total = 0;
  for (const auto& [tau, p] : ex.law) total += p;
  CHECK(total == 1);
  CHECK(ex.prefix_probability({}) == 1);
  const std::vector<Step> east{make_step(0, 1)};
  CHECK(ex.prefix_probability(east) == Rational(4, 5) / 4);
  // Reflection x -> -x maps the endpoint law to itself.
  const auto end = ex.endpoint_law();
  for (const auto& [x, p] : end) {
    Point r = spec.point(x);
    r[0] = -r[0];
    CHECK(end.at(spec.index(spec.reduce(r))) == p);
  }
  CHECK_THROWS(exact_rllerw(TorusSpec(2, 2), LengthLaw::deterministic(4)));
}

TEST_CASE("RLLERW: weight sums equal expected visits") {
  for (const auto& [spec, law] : {std::pair{TorusSpec(2, 3), LengthLaw::empirical({1, 1, 1, 1, 1})},
                                  std::pair{TorusSpec(2, 2), LengthLaw::empirical({1, 2, 3, 4})},
                                  std::pair{TorusSpec(1, 5), LengthLaw::deterministic(4)}}) {
    const RllerwLaw ex = exact_rllerw(spec, law);
    const ExactTables a = rllerw_weight_sums(ex);
    const ExactTables b = rllerw_expected_visits(ex);
    CHECK(a.torus == b.torus);
    CHECK(a.unwrapped == b.unwrapped);
    CHECK(b.unwrapped.at(Point{}) == 1);
  }
}
