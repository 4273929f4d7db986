#include "uwalk/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "uwalk/srw_kernel.hpp"

namespace uwalk {

namespace {

constexpr double kPi = std::numbers::pi;

double hn_shift() { return std::sqrt(2.0 / kPi); }
double hn_scale() { return std::sqrt(1.0 - 2.0 / kPi); }

double prefactor(int d) {
  if (d < 3) throw std::invalid_argument("the radial integral needs d >= 3");
  return d / (2.0 * std::pow(kPi, d / 2.0));
}

// int_0^inf s^{p} e^{-s} [1 - G(c / s)] ds with c = d xi^2 / 2, where G's
// breakpoints x_j map to s_j = c / x_j. Split at s = 1; s = u^2 on (0, 1]
// and s = 1 - ln u on [1, inf), both onto u in (0, 1].
QuadratureResult radial_integral(const std::function<double(double)>& G, const std::vector<double>& xs, double p,
                                 double c, double abs_tol) {
  auto survival = [&](double s) { return 1.0 - G(c / s); };
  auto near = [&](double u) {
    const double s = u * u;
    return 2.0 * u * std::pow(s, p) * std::exp(-s) * survival(s);
  };
  auto far = [&](double u) {
    const double s = 1.0 - std::log(u);
    return std::pow(s, p) * std::exp(-1.0) * survival(s);
  };
  std::vector<double> pn{0.0, 1.0}, pf{0.0, 1.0};
  for (double x : xs) {
    if (!(x > 0.0) || !std::isfinite(x)) continue;
    const double s = c / x;
    if (!(s > 0.0) || !std::isfinite(s)) continue;
    if (s < 1.0)
      pn.push_back(std::sqrt(s));
    else if (s > 1.0)
      pf.push_back(std::exp(1.0 - s));
  }
  std::sort(pn.begin(), pn.end());
  std::sort(pf.begin(), pf.end());
  const auto a = integrate_pieces(near, pn, 0.5 * abs_tol, 1e-13, 20000);
  const auto b = integrate_pieces(far, pf, 0.5 * abs_tol, 1e-13, 20000);
  return {a.value + b.value, a.abs_error + b.abs_error, a.converged && b.converged, a.evaluations + b.evaluations};
}

}  // namespace

double half_normal_cdf(double x) { return x > 0.0 ? std::erf(x / std::numbers::sqrt2) : 0.0; }

double standardized_F(double x) { return half_normal_cdf(x * hn_scale() + hn_shift()); }

double phi_constant() { return std::sqrt(2.0 / (kPi - 2.0)); }

double srw_limit_constant(int d) {
  return prefactor(d) * std::tgamma(d / 2.0 - 1.0);
}

LimitLaw LimitLaw::zero() { return {[](double) { return 0.0; }, {}, 0.0, "zero"}; }

LimitLaw LimitLaw::step(double at) {
  return {[at](double x) { return x >= at ? 1.0 : 0.0; }, {at}, 1.0, "step:" + std::to_string(at)};
}

LimitLaw LimitLaw::standardized_half_normal() {
  return {standardized_F, {-hn_shift() / hn_scale()}, 1.0, "standardized_half_normal"};
}

LimitLaw LimitLaw::half_normal() { return {half_normal_cdf, {0.0}, 1.0, "half_normal"}; }

QuadratureResult prop1_rhs(const LimitLaw& G, int d, double xi, double abs_tol) {
  const double C = prefactor(d);
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be positive");
  if (std::isinf(xi)) return {srw_limit_constant(d) * (1.0 - G.at_infinity), 0.0, true, 0};
  auto r = radial_integral(G.cdf, G.breakpoints, d / 2.0 - 2.0, d * xi * xi / 2.0, abs_tol / C);
  r.value *= C;
  r.abs_error *= C;
  return r;
}

QuadratureResult h_d(const CollapseParams& p, double xi, const LimitLaw& F, double abs_tol) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) throw std::invalid_argument("alpha and beta must be positive");
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be positive");
  const double C = p.alpha * prefactor(p.d);
  if (std::isinf(xi)) return {p.alpha * srw_limit_constant(p.d) * (1.0 - F.at_infinity), 0.0, true, 0};
  auto G = [&](double x) { return F.cdf(p.beta * x - p.gamma); };
  std::vector<double> xs;
  for (double b : F.breakpoints) xs.push_back((b + p.gamma) / p.beta);
  auto r = radial_integral(G, xs, p.d / 2.0 - 2.0, p.d * xi * xi / 2.0, abs_tol / C);
  r.value *= C;
  r.abs_error *= C;
  return r;
}

double gaussian_pbar(std::uint64_t n, const Point& z, int d) {
  if (n == 0) throw std::invalid_argument("pbar_n needs n >= 1");
  double r2 = 0.0;
  for (int a = 0; a < d; ++a) r2 += static_cast<double>(z[a]) * static_cast<double>(z[a]);
  const double nn = static_cast<double>(n);
  return 2.0 * std::pow(d / (2.0 * kPi * nn), d / 2.0) * std::exp(-d * r2 / (2.0 * nn));
}

LemmaSums lemma_sums(const Point& z, int d, std::uint64_t n_max, double eps) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  const auto p = srw_point_series(z, d, n_max);
  LemmaSums out{};
  out.n_max = n_max;
  const double norm = euclidean_norm(z, d);
  out.split = static_cast<std::uint64_t>(std::ceil(std::pow(std::ceil(norm), 2.0 - 2.0 * eps / d)));
  const double power = d / 2.0 + 1.0;
  double prev = gaussian_pbar(1, z, d);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double next = gaussian_pbar(n + 1, z, d);
    const double dv = std::abs(prev - next);
    out.pbar_variation += dv;
    const double scale = std::pow(static_cast<double>(n), power);
    if (n >= out.split) out.c2_estimate = std::max(out.c2_estimate, scale * dv);
    if (parity(n, z, d)) {
      const double e = std::abs(p[n] - prev);
      out.lclt += e;
      if (n >= out.split) out.c1_estimate = std::max(out.c1_estimate, scale * e);
    }
    prev = next;
  }
  const double tail = 2.0 / d * std::pow(static_cast<double>(n_max), -d / 2.0);
  out.lclt_tail_estimate = out.c1_estimate * tail;
  out.pbar_tail_estimate = out.c2_estimate * tail;
  return out;
}

}  // namespace uwalk
