#include <stdexcept>
#include "doctest.h"
#include "uwalk/lattice.hpp"
#include "uwalk/rng.hpp"

using namespace uwalk;

TEST_CASE("torus vertex set and wrap rule") {
  const TorusSpec ring(1, 4);
  CHECK(ring.lo() == -2);
  CHECK(ring.hi() == 1);
  Point x{};
  x[0] = 1;
  CHECK(ring.wrap_step(x, make_step(0, +1))[0] == -2);
  x[0] = -2;
  CHECK(ring.wrap_step(x, make_step(0, -1))[0] == 1);

  const TorusSpec odd(2, 5);
  CHECK(odd.lo() == -2);
  CHECK(odd.hi() == 2);
  CHECK(odd.volume() == 25);
  for (std::uint64_t i = 0; i < odd.volume(); ++i) {
    CHECK(odd.index(odd.point(i)) == i);
    CHECK(odd.contains(odd.point(i)));
  }
  // Index order is the lexicographic order of coordinates.
  for (std::uint64_t i = 1; i < odd.volume(); ++i) CHECK(odd.point(i - 1) < odd.point(i));
}

TEST_CASE("neighbor_index agrees with wrap_step") {
  for (auto [d, L] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 4}, {5, 3}}) {
    const TorusSpec spec(d, L);
    for (std::uint64_t i = 0; i < spec.volume(); ++i)
      for (int s = 0; s < 2 * d; ++s)
        CHECK(spec.neighbor_index(i, static_cast<Step>(s)) == spec.index(spec.wrap_step(spec.point(i), static_cast<Step>(s))));
  }
}

TEST_CASE("all-left walk on the 4-cycle") {
  const TorusSpec ring(1, 4);
  LatticeWalk z = LatticeWalk::on_lattice(1);
  for (int i = 0; i < 7; ++i) z.push(make_step(0, -1));
  const LatticeWalk t = wrap(z, ring);
  CHECK(t.endpoint()[0] == 1);
  CHECK(t.unwrapped_endpoint()[0] == -7);
  CHECK(winding_number(t) == 1);
  CHECK(unwrap(t) == z);
}

TEST_CASE("push and pop keep both endpoints") {
  const TorusSpec spec(2, 3);
  LatticeWalk t = LatticeWalk::on_torus(spec);
  for (int i = 0; i < 5; ++i) t.push(make_step(1, +1));
  CHECK(t.unwrapped_endpoint()[1] == 5);
  CHECK(t.endpoint()[1] == -1);
  CHECK(winding_number(t, 1) == 1);
  for (int i = 0; i < 5; ++i) t.pop();
  CHECK(t.length() == 0);
  CHECK(t.endpoint() == Point{});
  CHECK(t.unwrapped_endpoint() == Point{});
}

TEST_CASE("site parsing rejects malformed input") {
  std::vector<Point> sites(2);
  sites[0][0] = 1;
  CHECK_THROWS_AS(lattice_walk_from_sites(1, sites), std::invalid_argument);
  sites[0][0] = 0;
  sites[1][0] = 2;
  CHECK_THROWS_AS(lattice_walk_from_sites(1, sites), std::invalid_argument);
  sites[1][0] = 1;
  CHECK(lattice_walk_from_sites(1, sites).length() == 1);

  // On L = 2 the two unit steps along an axis reach the same vertex.
  const TorusSpec two(2, 2);
  std::vector<Point> t(2);
  t[1][0] = -1;
  CHECK_THROWS_AS(torus_walk_from_sites(two, t), std::invalid_argument);
  const TorusSpec three(2, 3);
  std::vector<Point> u(2);
  u[1][0] = 2;  // not a torus point
  CHECK_THROWS_AS(torus_walk_from_sites(three, u), std::invalid_argument);
}

TEST_CASE("random round trips") {
  Philox4x32 rng(99, 0);
  for (int d : {1, 2, 3, 5}) {
    for (int k = 0; k < 2000; ++k) {
      const auto L = static_cast<std::int64_t>(2 + rng.below(7));
      const TorusSpec spec(d, L);
      LatticeWalk z = LatticeWalk::on_lattice(d);
      const auto n = rng.below(40);
      for (std::uint64_t i = 0; i < n; ++i) z.push(static_cast<Step>(rng.below(2 * d)));
      const LatticeWalk t = wrap(z, spec);
      REQUIRE(unwrap(t) == z);
      CHECK(t.endpoint() == spec.reduce(z.endpoint()));
      for (int a = 0; a < d; ++a)
        CHECK(winding_number(t, a) == static_cast<std::uint64_t>(std::abs(z.endpoint()[a]) / L));
    }
  }
}

TEST_CASE("parity and norms") {
  Point z{};
  z[0] = 3;
  z[1] = -4;
  CHECK(l1_norm(z, 2) == 7);
  CHECK(euclidean_norm(z, 2) == doctest::Approx(5.0));
  CHECK(parity(7, z, 2));
  CHECK_FALSE(parity(6, z, 2));
  CHECK(format_point(z, 2) == "(3,-4)");
}
