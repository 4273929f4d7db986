#include <stdexcept>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <cmath>

#include "doctest.h"
#include "uwalk/enumeration.hpp"
#include "uwalk/quadrature.hpp"
#include "uwalk/srw_kernel.hpp"

using namespace uwalk;

namespace {
Point axis_point(std::int64_t k) {
  Point z{};
  z[0] = k;
  return z;
}
}  // namespace

TEST_CASE("first steps of the SRW kernel") {
  for (int d : {1, 2, 3, 5}) {
    CHECK(srw_point_series(axis_point(1), d, 2)[1] == doctest::Approx(1.0 / (2 * d)));
    CHECK(srw_point_series(Point{}, d, 2)[2] == doctest::Approx(1.0 / (2 * d)));
    CHECK(srw_point_series(Point{}, d, 2)[1] == 0.0);
  }
}

TEST_CASE("d = 1 kernel is binomial") {
  for (std::int64_t x : {0, 1, 5, 12}) {
    const auto p = srw_point_series(axis_point(x), 1, 80);
    for (std::uint64_t n = 0; n <= 80; ++n) {
      double expect = 0.0;
      if (n >= static_cast<std::uint64_t>(x) && (n + x) % 2 == 0)
        expect = boost::math::binomial_coefficient<double>(n, (n + x) / 2) * std::ldexp(1.0, -static_cast<int>(n));
      CHECK(p[n] == doctest::Approx(expect).epsilon(1e-13).scale(1e-14));
    }
  }
}

TEST_CASE("point series agrees with the convolution table") {
  for (int d : {2, 3, 4}) {
    const std::uint64_t n_max = 14;
    const auto table = SrwKernelTable::convolve(d, n_max, static_cast<std::int64_t>(n_max));
    CHECK(table.leaked_mass(n_max) == 0.0);
    for (std::int64_t a = -3; a <= 3; ++a)
      for (std::int64_t b = 0; b <= 2; ++b) {
        Point z{};
        z[0] = a;
        z[1] = b;
        if (d > 2) z[2] = 1;
        const auto s = srw_point_series(z, d, n_max);
        for (std::uint64_t n = 0; n <= n_max; ++n) CHECK(s[n] == doctest::Approx(table.p(n, z)).epsilon(1e-12).scale(1e-15));
      }
  }
  CHECK_THROWS_AS(SrwKernelTable::convolve(5, 40, 40, 1 << 20), std::length_error);
}

TEST_CASE("RLRW oracle on deterministic laws") {
  CHECK(oracle_rlrw_two_point(LengthLaw::deterministic(0), Point{}, 3).value == 1.0);
  CHECK(oracle_rlrw_two_point(LengthLaw::deterministic(0), axis_point(1), 3).value == 0.0);
  const RlrwOracle o = oracle_rlrw_two_point(LengthLaw::deterministic(2), Point{}, 1);
  CHECK(o.value == doctest::Approx(1.5));
  CHECK(o.truncation_bound == 0.0);
}

TEST_CASE("RLRW oracle on a geometric law matches the Bessel integral") {
  // sum_n q^n p_n(z) = int_0^inf e^{-t} prod_i I_{z_i}(q t / d) dt.
  const double q = 0.9;
  const int d = 3;
  for (const Point& z : {Point{}, axis_point(1), Point{1, 1, 0}, Point{2, -1, 3}}) {
    const auto f = [&](double t) {
      double v = std::exp(-t);
      for (int i = 0; i < d; ++i) v *= boost::math::cyl_bessel_i(std::abs(z[i]), q * t / d);
      return v;
    };
    const double expect = integrate(f, 0, 600, 1e-13, 1e-12, 20000).value;
    const RlrwOracle o = oracle_rlrw_two_point(LengthLaw::geometric(q), z, d, 1e-10);
    CHECK(o.truncation_bound < 1e-10);
    CHECK(o.value == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("SAW enumeration") {
  const SawEnumeration e = enumerate_saw(TorusSpec(1, 4));
  CHECK(e.by_length == std::vector<std::uint64_t>{1, 2, 2, 2});
  const auto law = e.length_law(1.0);
  CHECK(law.at(3) == doctest::Approx(2.0 / 7.0));
  CHECK_THROWS_AS(enumerate_saw(TorusSpec(2, 5)), std::length_error);

  // Summing g~ over lifts of a torus vertex gives g at that vertex.
  const TorusSpec spec(2, 3);
  const SawEnumeration e2 = enumerate_saw(spec);
  const double J = 0.3;
  std::map<std::uint64_t, double> folded;
  for (const auto& [z, v] : e2.unwrapped_two_point(J)) folded[spec.index(spec.reduce(z))] += v;
  const auto g = e2.two_point(J);
  REQUIRE(folded.size() == g.size());
  for (const auto& [x, v] : g) CHECK(folded[x] == doctest::Approx(v).epsilon(1e-13));
  CHECK(g.at(spec.index(Point{})) >= 1.0);
}

TEST_CASE("high-temperature enumeration") {
  const TorusSpec spec(2, 3);
  const auto e = enumerate_high_temperature(spec);
  CHECK(e.edges == 18);
  const double t = 0.35;
  CHECK(e.correlation(spec.index(Point{}), t) == doctest::Approx(1.0));
  double total = 0;
  for (const auto& [k, p] : e.walk_length_law(t)) total += p;
  CHECK(total == doctest::Approx(1.0));
  std::map<std::uint64_t, double> folded;
  for (const auto& [z, v] : e.unwrapped_two_point(t)) folded[spec.index(spec.reduce(z))] += v;
  for (std::uint64_t v = 0; v < spec.volume(); ++v) CHECK(folded[v] == doctest::Approx(e.correlation(v, t)).epsilon(1e-12));
}
