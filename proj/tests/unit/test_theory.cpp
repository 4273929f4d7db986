#include <stdexcept>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "doctest.h"
#include "uwalk/quadrature.hpp"
#include "uwalk/theory.hpp"

using namespace uwalk;

TEST_CASE("quadrature") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0, M_PI).value == doctest::Approx(2.0).epsilon(1e-12));
  const auto r = integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, 1e-10, 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
  const auto p = integrate_pieces([](double x) { return x < 1 ? 0.0 : 1.0; }, {0, 1, 3});
  CHECK(p.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("half-normal constants") {
  CHECK(half_normal_cdf(1.0) == doctest::Approx(0.6826894921370859));
  CHECK(standardized_F(0.0) == doctest::Approx(half_normal_cdf(std::sqrt(2 / M_PI))).epsilon(1e-12));
  CHECK(standardized_F(0.0) == doctest::Approx(0.5751).epsilon(1e-4));
  CHECK(standardized_F(-10) == 0.0);
  CHECK(phi_constant() == doctest::Approx(std::sqrt(2 / (M_PI - 2))));
  CHECK(srw_limit_constant(5) == doctest::Approx(5 / (4 * M_PI * M_PI)).epsilon(1e-14));
  CHECK(srw_limit_constant(4) == doctest::Approx(2 / (M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("prop1 with a step law is an upper incomplete gamma") {
  for (int d : {3, 4, 5, 6})
    for (double xi : {0.05, 0.3, 1.0, 2.5}) {
      const double expect =
          srw_limit_constant(d) / std::tgamma(d / 2.0 - 1) * boost::math::tgamma(d / 2.0 - 1, d * xi * xi / 2);
      const auto r = prop1_rhs(LimitLaw::step(), d, xi);
      CHECK(r.converged);
      CHECK(r.value == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("prop1 limits, monotonicity and bounds") {
  for (int d : {3, 5}) {
    const double c = srw_limit_constant(d);
    CHECK(prop1_rhs(LimitLaw::zero(), d, 1.0).value == doctest::Approx(c).epsilon(1e-10));
    CHECK(prop1_rhs(LimitLaw::half_normal(), d, 1e-9).value == doctest::Approx(c).epsilon(1e-6));
    CHECK(prop1_rhs(LimitLaw::step(), d, INFINITY).value == 0.0);
    double prev = c;
    for (double xi = 0.1; xi < 3; xi += 0.1) {
      const double v = prop1_rhs(LimitLaw::half_normal(), d, xi).value;
      CHECK(v <= prev + 1e-12);
      CHECK(v >= 0.0);
      prev = v;
    }
  }
}

TEST_CASE("h_d reductions") {
  const int d = 5;
  const double c = srw_limit_constant(d);
  // F = step at 1: 1 - F(beta d xi^2/(2s) - gamma) = 1(s > beta d xi^2 / (2 (1 + gamma))).
  const CollapseParams p{2.0, 0.7, 0.4, d};
  const double xi = 0.8;
  const double cut = p.beta * d * xi * xi / (2 * (1 + p.gamma));
  const double expect = p.alpha * c / std::tgamma(d / 2.0 - 1) * boost::math::tgamma(d / 2.0 - 1, cut);
  CHECK(h_d(p, xi, LimitLaw::step()).value == doctest::Approx(expect).epsilon(1e-8));
  // beta -> 0 leaves alpha c (1 - F(-gamma)).
  const CollapseParams flat{1.5, 1e-14, 0.5, d};
  CHECK(h_d(flat, 1.0).value == doctest::Approx(1.5 * c * (1 - standardized_F(-0.5))).epsilon(1e-6));
  // alpha = beta = 1, gamma = 0 with G(x) = F(x) matches prop1.
  CHECK(h_d({1, 1, 0, d}, 0.6).value ==
        doctest::Approx(prop1_rhs(LimitLaw::standardized_half_normal(), d, 0.6).value).epsilon(1e-9));
}

TEST_CASE("Gaussian kernel") {
  Point z{};
  CHECK(gaussian_pbar(1, z, 1) == doctest::Approx(2 / std::sqrt(2 * M_PI)));
  // Summed over sites of the right parity, pbar_n is a Riemann sum of a density.
  for (int d : {2, 3}) {
    const std::uint64_t n = 200;
    double sum = 0;
    const int R = 80;
    Point p{};
    auto rec = [&](auto& self, int axis) -> void {
      if (axis == d) {
        if (parity(n, p, d)) sum += gaussian_pbar(n, p, d);
        return;
      }
      for (int x = -R; x <= R; ++x) {
        p[axis] = x;
        self(self, axis + 1);
      }
    };
    rec(rec, 0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("lemma sums decrease with distance") {
  const int d = 5;
  double prev = INFINITY;
  for (std::int64_t k : {4, 8, 16}) {
    Point z{};
    z[0] = k;
    const LemmaSums s = lemma_sums(z, d, 64 * k * k);
    CHECK(s.lclt > 0);
    CHECK(s.lclt < prev);
    CHECK(s.lclt_tail_estimate < s.lclt);
    prev = s.lclt;
  }
}
