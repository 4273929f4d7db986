#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "uwalk/lattice.hpp"
#include "uwalk/quadrature.hpp"

namespace uwalk {

/// P(|X| <= x) for standard normal X.
double half_normal_cdf(double x);
/// CDF of (|X| - E|X|) / sd(|X|).
double standardized_F(double x);
/// E|X| / sd(|X|) = sqrt(2 / (pi - 2)).
double phi_constant();
/// (d / 2 pi^{d/2}) Gamma(d/2 - 1), d >= 3.
double srw_limit_constant(int d);

/// A distribution function given pointwise, with the locations of its
/// jumps and kinks (used as quadrature breakpoints) and its limit at +inf.
struct LimitLaw {
  std::function<double(double)> cdf;
  std::vector<double> breakpoints;
  double at_infinity = 1.0;
  std::string tag;

  /// G = 0: the length grows faster than any scale.
  static LimitLaw zero();
  /// G(x) = 1(x >= at).
  static LimitLaw step(double at = 1.0);
  /// The standardized half-normal F.
  static LimitLaw standardized_half_normal();
  /// G(x) = P(|X| <= x).
  static LimitLaw half_normal();
};

/// (d / 2 pi^{d/2}) int_0^inf s^{d/2-2} e^{-s} [1 - G(d xi^2 / (2 s))] ds.
/// xi = +inf is evaluated symbolically as the constant times (1 - G(inf)).
QuadratureResult prop1_rhs(const LimitLaw& G, int d, double xi, double abs_tol = 1e-10);

struct CollapseParams {
  double alpha;
  double beta;
  double gamma;
  int d;
};

/// alpha (d / 2 pi^{d/2}) int s^{d/2-2} e^{-s} [1 - F(beta d xi^2/(2s) - gamma)] ds.
/// `F` defaults to the standardized half-normal law.
QuadratureResult h_d(const CollapseParams& params, double xi, const LimitLaw& F = LimitLaw::standardized_half_normal(),
                     double abs_tol = 1e-10);

/// 2 (d / 2 pi n)^{d/2} exp(-d ||z||^2 / 2n), n >= 1.
double gaussian_pbar(std::uint64_t n, const Point& z, int d);

struct LemmaSums {
  /// sum_{1 <= n <= n_max, n + ||z||_1 even} |p_n(z) - pbar_n(z)|
  double lclt;
  /// sum_{1 <= n <= n_max} |pbar_n(z) - pbar_{n+1}(z)|
  double pbar_variation;
  std::uint64_t n_max;
  /// Split point a = ceil(||z||)^{2 - 2 eps/d} of the analytic tail estimate.
  std::uint64_t split;
  /// Largest n^{d/2+1} |p_n - pbar_n| over a <= n <= n_max (estimate of c_1),
  /// and the resulting tail estimate (2/d) c_1 n_max^{-d/2}.
  double c1_estimate;
  double lclt_tail_estimate;
  /// The same for the pbar differences.
  double c2_estimate;
  double pbar_tail_estimate;
};

/// Partial sums of the local-limit error terms. The first sum runs only
/// over n with the parity of z: p_n(z) vanishes otherwise while pbar_n does
/// not, so without the restriction the sum diverges.
LemmaSums lemma_sums(const Point& z, int d, std::uint64_t n_max, double eps = 0.5);

}  // namespace uwalk
