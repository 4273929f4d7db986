#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "uwalk/fit.hpp"
#include "uwalk/length_law.hpp"

using namespace uwalk;

TEST_CASE("exact power law is recovered") {
  ScalingSeries s;
  for (double L : {4.0, 8.0, 16.0, 32.0}) s.push_back({L, 3.0 * std::pow(L, 1.5), 0.01 * std::pow(L, 1.5)});
  const PowerLawFit f = fit_power_law(s);
  CHECK(f.exponent == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f.amplitude == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.chi2_per_dof == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.points == 4);
  CHECK(f.min_L == 4.0);
}

TEST_CASE("noisy planted exponent within its error bar") {
  Philox4x32 rng(7, 0);
  ScalingSeries s;
  for (double L : {5.0, 7.0, 9.0, 11.0, 13.0, 17.0, 21.0}) {
    const double v = 0.7 * std::pow(L, 0.25);
    const double e = 0.002 * v;
    s.push_back({L, v + e * standard_normal(rng), e});
  }
  const PowerLawFit f = fit_power_law(s);
  CHECK(std::abs(f.exponent - 0.25) < 4 * f.exponent_stderr);
  CHECK(f.exponent_stderr > 0);
}

TEST_CASE("cutoff sweep and degenerate input") {
  ScalingSeries s;
  for (double L : {2.0, 4.0, 8.0, 16.0, 32.0}) s.push_back({L, L * L, 0.0});
  const auto sweep = cutoff_sweep(s);
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[2].min_L == 8.0);
  for (const auto& f : sweep) CHECK(f.exponent == doctest::Approx(2.0));
  s.push_back({64.0, -1.0, 0.0});
  CHECK_FALSE(fit_power_law(s).warnings.empty());
  CHECK_THROWS(fit_power_law(ScalingSeries{{2, 1, 0}, {4, 2, 0}}));
}

TEST_CASE("power law with offset") {
  ScalingSeries s;
  for (double L : {5.0, 7.0, 9.0, 11.0, 13.0, 15.0, 17.0})
    s.push_back({L, 0.3 * std::pow(L, 0.25) - 0.28, 1e-4});
  const OffsetPowerLawFit f = fit_power_law_with_offset(s);
  CHECK(f.exponent == doctest::Approx(0.25).epsilon(0.01));
  CHECK(f.amplitude == doctest::Approx(0.3).epsilon(0.02));
  CHECK(f.offset == doctest::Approx(-0.28).epsilon(0.02));
  CHECK(f.exponent_lo <= f.exponent);
  CHECK(f.exponent_hi >= f.exponent);
}

TEST_CASE("weighted mean") {
  const WeightedMean m = weighted_mean({1.0, 3.0}, {1.0, 1.0});
  CHECK(m.value == doctest::Approx(2.0));
  CHECK(m.stderr_ == doctest::Approx(std::sqrt(0.5)));
  CHECK(m.chi2_per_dof == doctest::Approx(2.0));
  const WeightedMean w = weighted_mean({1.0, 3.0}, {1.0, 0.5});
  CHECK(w.value == doctest::Approx((1.0 + 4.0 * 3.0) / 5.0));
}
