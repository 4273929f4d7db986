#include <stdexcept>
#include <set>

#include "doctest.h"
#include "uwalk/rng.hpp"

using namespace uwalk;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using B = Philox4x32::Block;
  CHECK(Philox4x32::bijection(B{0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::bijection(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::bijection(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  Philox4x32 a(5, 0), b(5, 0), c(5, 1), e(6, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    CHECK(x == b());
    seen.insert(x);
    seen.insert(c());
    seen.insert(e());
  }
  CHECK(seen.size() == 3000);
}

TEST_CASE("below is unbiased on small ranges") {
  Philox4x32 r(1, 2);
  const int n = 6, draws = 600000;
  std::array<int, 6> count{};
  for (int i = 0; i < draws; ++i) {
    const auto k = r.below(n);
    REQUIRE(k < 6);
    ++count[k];
  }
  double chi2 = 0;
  for (int c : count) chi2 += (c - draws / 6.0) * (c - draws / 6.0) / (draws / 6.0);
  CHECK(chi2 < 25.0);  // 5 dof; p ~ 1e-4
  double u = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = r.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    u += x;
  }
  CHECK(u / 100000 == doctest::Approx(0.5).epsilon(0.01));
}
