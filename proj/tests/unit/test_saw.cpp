#include <stdexcept>
#include <set>

#include "doctest.h"
#include "uwalk/enumeration.hpp"
#include "uwalk/observables.hpp"
#include "uwalk/saw.hpp"

using namespace uwalk;

namespace {

bool self_avoiding(const BerrettiSokalChain& c) {
  const auto s = c.site_indices();
  return std::set<std::uint64_t>(s.begin(), s.end()).size() == s.size() && s.size() == c.walk().length() + 1;
}

}  // namespace

TEST_CASE("acceptance probabilities") {
  const TorusSpec spec(2, 5);
  BerrettiSokalChain a(spec, 0.1, false, Philox4x32(1, 0));
  CHECK(a.append_acceptance() == doctest::Approx(0.4));
  CHECK(a.delete_acceptance() == 1.0);
  BerrettiSokalChain b(spec, 0.5, false, Philox4x32(1, 0));
  CHECK(b.append_acceptance() == 1.0);
  CHECK(b.delete_acceptance() == doctest::Approx(0.5));
}

TEST_CASE("chain stays self-avoiding and consistent") {
  for (bool lifted : {false, true}) {
    BerrettiSokalChain c(TorusSpec(3, 4), 0.2, lifted, Philox4x32(2, lifted));
    for (int i = 0; i < 20000; ++i) {
      c.step();
      REQUIRE(self_avoiding(c));
      const auto sites = c.walk().sites();
      REQUIRE(c.spec().index(sites.back()) == c.site_indices().back());
    }
  }
}

TEST_CASE("d=1 L=4 length law is 1 : 2J : 2J^2 : 2J^3") {
  const double J = 0.4;
  const auto exact = enumerate_saw(TorusSpec(1, 4)).length_law(J);
  const double z = 1 + 2 * J + 2 * J * J + 2 * J * J * J;
  CHECK(exact.at(0) == doctest::Approx(1 / z));
  CHECK(exact.at(3) == doctest::Approx(2 * J * J * J / z));
  for (bool lifted : {false, true}) {
    BerrettiSokalChain c(TorusSpec(1, 4), J, lifted, Philox4x32(3, lifted));
    IntHistogram h;
    for (int i = 0; i < 2000000; ++i) {
      c.step();
      h.add(static_cast<std::int64_t>(c.walk().length()));
    }
    CHECK(total_variation(h, exact) < 0.005);
  }
}

TEST_CASE("lifted chain matches enumeration on d=2 L=3") {
  const TorusSpec spec(2, 3);
  const auto en = enumerate_saw(spec);
  BerrettiSokalChain c(spec, 0.3, true, Philox4x32(4, 0));
  c.run(10000);
  IntHistogram h;
  for (int i = 0; i < 3000000; ++i) {
    c.step();
    h.add(static_cast<std::int64_t>(c.walk().length()));
  }
  CHECK(total_variation(h, en.length_law(0.3)) < 0.01);
  CHECK(c.stats().lift_flips > 0);
}
