#include "uwalk/transfer_matrix.hpp"

#include <stdexcept>

namespace uwalk {

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0.0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

Matrix power(const Matrix& m, std::int64_t k) {
  Matrix r = identity(m.size());
  for (std::int64_t i = 0; i < k; ++i) r = multiply(r, m);
  return r;
}

int spin(std::uint64_t state, std::int64_t y) { return (state >> y & 1) ? -1 : 1; }

}  // namespace

std::vector<double> ising_correlations(const TorusSpec& spec, double t) {
  const int d = spec.dim();
  const std::int64_t L = spec.period();
  if (d > 2 || (d == 2 && L > 4)) throw std::invalid_argument("transfer matrix supports d = 1, or d = 2 with L <= 4");
  const std::int64_t width = d == 2 ? L : 1;
  const std::size_t n = std::size_t{1} << width;

  // T[s][s'] carries the bonds inside column s and the bonds from s to s'.
  Matrix T(n, std::vector<double>(n, 1.0));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t u = 0; u < n; ++u) {
      double w = 1.0;
      for (std::int64_t y = 0; y < width; ++y) {
        if (d == 2) w *= 1.0 + t * spin(s, y) * spin(s, (y + 1) % width);
        w *= 1.0 + t * spin(s, y) * spin(u, y);
      }
      T[s][u] = w;
    }

  auto trace_with = [&](std::int64_t y0, std::int64_t dx, std::int64_t yv) {
    // Tr(S_{y0} T^{dx} S_{yv} T^{L - dx}) where S_y multiplies by spin y.
    const Matrix A = power(T, dx), B = power(T, L - dx);
    double tr = 0.0;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t u = 0; u < n; ++u) tr += spin(s, y0) * A[s][u] * spin(u, yv) * B[u][s];
    return tr;
  };

  const std::int64_t lo = spec.lo();
  const std::int64_t x0 = -lo, y0 = d == 2 ? -lo : 0;
  double z = 0.0;
  {
    const Matrix P = power(T, L);
    for (std::size_t s = 0; s < n; ++s) z += P[s][s];
  }
  std::vector<double> out(spec.volume());
  for (std::uint64_t v = 0; v < spec.volume(); ++v) {
    const Point p = spec.point(v);
    const std::int64_t xv = p[0] - lo, yv = d == 2 ? p[1] - lo : 0;
    const std::int64_t dx = ((xv - x0) % L + L) % L;
    out[v] = trace_with(y0, dx, yv) / z;
  }
  return out;
}

std::vector<double> ising_correlations_brute_force(const TorusSpec& spec, double t) {
  const std::uint64_t V = spec.volume();
  if (V > 20) throw std::invalid_argument("brute-force Ising sum limited to 20 vertices");
  const auto d = static_cast<std::uint64_t>(spec.dim());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> bonds;
  for (std::uint64_t v = 0; v < V; ++v)
    for (std::uint64_t a = 0; a < d; ++a) bonds.emplace_back(v, spec.neighbor_index(v, make_step(static_cast<int>(a), +1)));
  const std::uint64_t origin = spec.index(Point{});
  std::vector<double> num(V, 0.0);
  double z = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << V); ++s) {
    double w = 1.0;
    for (const auto& [a, b] : bonds) w *= 1.0 + t * spin(s, static_cast<std::int64_t>(a)) * spin(s, static_cast<std::int64_t>(b));
    z += w;
    const int s0 = spin(s, static_cast<std::int64_t>(origin));
    for (std::uint64_t v = 0; v < V; ++v) num[v] += w * s0 * spin(s, static_cast<std::int64_t>(v));
  }
  for (auto& x : num) x /= z;
  return num;
}

}  // namespace uwalk
