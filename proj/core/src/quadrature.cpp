#include "uwalk/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace uwalk {

namespace {

// Kronrod abscissae (positive half, descending) with 15- and 7-point weights.
constexpr std::array<double, 8> kXk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kXk[1], kXk[3], kXk[5], kXk[7].
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b, int& evals) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWk[7] * fc, g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXk[i];
    const double s = f(c - dx) + f(c + dx);
    k += kWk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  evals += 15;
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

QuadratureResult integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& points,
                                  double abs_tol, double rel_tol, int max_intervals) {
  if (points.size() < 2) throw std::invalid_argument("integrate_pieces needs at least two points");
  QuadratureResult res;
  std::priority_queue<Interval> heap;
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) continue;
    Interval iv = gk15(f, points[i], points[i + 1], res.evaluations);
    value += iv.value;
    error += iv.error;
    heap.push(iv);
  }
  int intervals = static_cast<int>(heap.size());
  while (!heap.empty() && error > std::max(abs_tol, rel_tol * std::abs(value)) && intervals < max_intervals) {
    Interval iv = heap.top();
    const double mid = 0.5 * (iv.a + iv.b);
    if (!(mid > iv.a && mid < iv.b)) break;  // interval cannot be split further
    heap.pop();
    Interval l = gk15(f, iv.a, mid, res.evaluations);
    Interval r = gk15(f, mid, iv.b, res.evaluations);
    value += l.value + r.value - iv.value;
    error += l.error + r.error - iv.error;
    heap.push(l);
    heap.push(r);
    ++intervals;
  }
  // Re-sum to shed the drift of the running totals.
  value = 0.0;
  error = 0.0;
  std::vector<Interval> all;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (const auto& iv : all) {
    value += iv.value;
    error += iv.error;
  }
  res.value = value;
  res.abs_error = error;
  res.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  return res;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol, int max_intervals) {
  if (a == b) return {0.0, 0.0, true, 0};
  if (a > b) {
    QuadratureResult r = integrate(f, b, a, abs_tol, rel_tol, max_intervals);
    r.value = -r.value;
    return r;
  }
  return integrate_pieces(f, {a, b}, abs_tol, rel_tol, max_intervals);
}

}  // namespace uwalk
