#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "uwalk/enumeration.hpp"
#include "uwalk/transfer_matrix.hpp"
#include "uwalk/verification.hpp"
#include "uwalk/worm.hpp"

using namespace uwalk;

TEST_CASE("edge configurations") {
  const TorusSpec spec(2, 3);
  EdgeConfig c(spec);
  CHECK(c.closed());
  c.move_head(make_step(0, +1));
  CHECK_FALSE(c.closed());
  CHECK(c.edge_count() == 1);
  CHECK(c.odd_vertices().size() == 2);
  c.move_head(make_step(0, -1));
  CHECK(c.closed());
  CHECK(c.edge_count() == 0);
  const std::vector<std::uint64_t> bad{0, 5};
  CHECK_THROWS(EdgeConfig::from_edges(spec, bad));
}

TEST_CASE("L = 2 keeps parallel edges distinct") {
  const TorusSpec spec(1, 2);
  EdgeConfig c(spec);
  c.move_head(make_step(0, +1));
  c.move_head(make_step(0, +1));
  // Both parallel edges between the two vertices are now occupied.
  CHECK(c.edge_count() == 2);
  CHECK(c.closed());
  const auto en = enumerate_high_temperature(spec);
  const double t = 0.3;
  CHECK(en.lambda(spec.index(Point{}), t) == doctest::Approx(1 + t * t));
  CHECK(en.correlation(spec.index(Point{-1}), t) == doctest::Approx(2 * t / (1 + t * t)));
}

TEST_CASE("4-cycle partition sums") {
  const TorusSpec spec(1, 4);
  const auto en = enumerate_high_temperature(spec);
  const double t = 0.35;
  const std::uint64_t o = spec.index(Point{});
  Point x{};
  x[0] = 1;
  CHECK(en.lambda(o, t) == doctest::Approx(1 + std::pow(t, 4)));
  CHECK(en.lambda(spec.index(x), t) == doctest::Approx(t + std::pow(t, 3)));
  CHECK(en.correlation(spec.index(x), 1e-9) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("transfer matrix agrees with brute force and enumeration") {
  for (auto [d, L] : {std::pair{1, 5}, {2, 2}, {2, 3}, {2, 4}}) {
    const TorusSpec spec(d, L);
    const double t = 0.37;
    const auto tm = ising_correlations(spec, t);
    const auto bf = ising_correlations_brute_force(spec, t);
    REQUIRE(tm.size() == bf.size());
    for (std::size_t v = 0; v < tm.size(); ++v) CHECK(tm[v] == doctest::Approx(bf[v]).epsilon(1e-12));
    if (spec.dim() * spec.volume() <= 20) {
      const auto en = enumerate_high_temperature(spec);
      for (std::size_t v = 0; v < tm.size(); ++v) CHECK(en.correlation(v, t) == doctest::Approx(tm[v]).epsilon(1e-12));
    }
  }
}

TEST_CASE("worm on the 4x4 torus matches the transfer matrix") {
  const TorusSpec spec(2, 4);
  const double t = 0.35;
  const auto exact = ising_correlations(spec, t);
  WormChain chain(spec, t, Philox4x32(11, 0));
  chain.run(100000);
  const std::uint64_t steps = 20000000, chunk = steps / 16;
  std::vector<std::array<double, 16>> visits(spec.volume());
  for (auto& b : visits) b.fill(0);
  for (std::uint64_t i = 0; i < steps; ++i) {
    chain.step();
    visits[chain.config().head()][i / chunk] += 1;
  }
  const std::uint64_t o = spec.index(Point{});
  int beyond = 0;
  for (std::uint64_t v = 0; v < spec.volume(); ++v) {
    if (v == o) continue;
    double num = 0, den = 0;
    for (int b = 0; b < 16; ++b) {
      num += visits[v][b];
      den += visits[o][b];
    }
    std::array<double, 16> loo{};
    double mean = 0;
    for (int b = 0; b < 16; ++b) {
      loo[b] = (num - visits[v][b]) / (den - visits[o][b]);
      mean += loo[b] / 16;
    }
    double var = 0;
    for (double x : loo) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var * 15 / 16);
    if (std::abs(num / den - exact[v]) > 3.5 * se) ++beyond;
  }
  CHECK(beyond <= 1);
}

TEST_CASE("wrong acceptance is detected by the worm ratio check") {
  const TorusSpec spec(2, 2);
  CHECK(worm_ratio_check(spec, 0.4, 0.4, 4000000, 5).passed);
  CHECK_FALSE(worm_ratio_check(spec, 0.45, 0.4, 4000000, 5).passed);
}

TEST_CASE("Ising walk is well defined on every enumerated set") {
  for (const TorusSpec spec : {TorusSpec(2, 2), TorusSpec(1, 5), TorusSpec(2, 3)}) {
    const std::uint64_t o = spec.index(Point{});
    for_each_sourced_set(spec, [&](std::span<const std::uint64_t> edges) {
      const EdgeConfig c = EdgeConfig::from_edges(spec, edges);
      const LatticeWalk w = extract_ising_walk(c);
      if (c.head() == o) {
        REQUIRE(w.length() == 0);
      } else {
        REQUIRE(spec.index(w.endpoint()) == c.head());
        REQUIRE(w.length() <= edges.size());
      }
      const auto ref = reference_ising_walk(c);
      REQUIRE(std::equal(ref.begin(), ref.end(), w.steps().begin(), w.steps().end()));
    });
  }
}

TEST_CASE("Ising walk follows a lone trail") {
  const TorusSpec spec(1, 4);
  EdgeConfig c(spec);
  c.move_head(make_step(0, +1));
  c.move_head(make_step(0, +1));
  c.move_head(make_step(0, +1));
  // Edges 0-1, 1-(-2), (-2)-(-1): head at -1 with a path going right.
  const LatticeWalk w = extract_ising_walk(c);
  REQUIRE(w.length() == 3);
  CHECK(w.steps()[0] == make_step(0, +1));
  EdgeConfig d(spec);
  d.move_head(make_step(0, -1));
  d.move_head(make_step(0, -1));
  d.move_head(make_step(0, +1));  // removes the edge again
  d.move_head(make_step(0, +1));  // removes the first one: closed
  CHECK(d.closed());
}

TEST_CASE("Ising walk takes the smallest neighbour first") {
  // Occupied: the unit square through origin, (0,-1), (1,-1), (1,0), plus the
  // edge from the origin to the head (0,1). Of the origin's neighbours
  // (0,-1) comes first in index order, so the square is traversed first.
  const TorusSpec spec(2, 4);
  EdgeConfig c(spec);
  for (Step s : {make_step(1, -1), make_step(0, +1), make_step(1, +1), make_step(0, -1)}) c.move_head(s);
  REQUIRE(c.closed());
  c.move_head(make_step(1, +1));
  const LatticeWalk w = extract_ising_walk(c);
  REQUIRE(w.length() == 5);
  CHECK(w.steps()[0] == make_step(1, -1));
  CHECK(w.steps()[4] == make_step(1, +1));
  const auto ref = reference_ising_walk(c);
  CHECK(std::equal(ref.begin(), ref.end(), w.steps().begin(), w.steps().end()));
}
