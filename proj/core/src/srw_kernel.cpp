#include "uwalk/srw_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>

namespace uwalk {

SrwKernelTable SrwKernelTable::convolve(int d, std::uint64_t n_max, std::int64_t radius, std::uint64_t memory_limit) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension out of range");
  if (radius < 0) throw std::invalid_argument("negative radius");
  SrwKernelTable t;
  t.d_ = d;
  t.n_max_ = n_max;
  t.radius_ = radius;
  t.side_ = static_cast<std::uint64_t>(2 * radius + 1);
  t.cells_ = 1;
  for (int a = 0; a < d; ++a) t.cells_ *= t.side_;
  const long double bytes = static_cast<long double>(t.cells_) * (n_max + 1) * sizeof(double);
  if (bytes > memory_limit)
    throw std::length_error("SRW kernel table needs " + std::to_string(static_cast<double>(bytes)) +
                            " bytes, limit is " + std::to_string(memory_limit));
  t.table_.assign(t.cells_ * (n_max + 1), 0.0);
  t.leaked_.assign(n_max + 1, 0.0);
  t.table_[t.offset(Point{})] = 1.0;

  std::vector<std::uint64_t> stride(d);
  stride[d - 1] = 1;
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * t.side_;
  const double w = 1.0 / (2.0 * d);
  for (std::uint64_t n = 0; n < n_max; ++n) {
    const double* src = t.table_.data() + n * t.cells_;
    double* dst = t.table_.data() + (n + 1) * t.cells_;
    double leaked = 0.0;
    for (std::uint64_t c = 0; c < t.cells_; ++c) {
      const double m = src[c];
      if (m == 0.0) continue;
      const double share = m * w;
      std::uint64_t rest = c;
      for (int a = 0; a < d; ++a) {
        const std::uint64_t coord = rest / stride[a];
        rest %= stride[a];
        if (coord + 1 < t.side_)
          dst[c + stride[a]] += share;
        else
          leaked += share;
        if (coord > 0)
          dst[c - stride[a]] += share;
        else
          leaked += share;
      }
    }
    t.leaked_[n + 1] = t.leaked_[n] + leaked;
  }
  return t;
}

std::uint64_t SrwKernelTable::offset(const Point& z) const {
  std::uint64_t off = 0;
  for (int a = 0; a < d_; ++a) off = off * side_ + static_cast<std::uint64_t>(z[a] + radius_);
  return off;
}

double SrwKernelTable::p(std::uint64_t n, const Point& z) const {
  if (n > n_max_) throw std::out_of_range("n beyond table");
  for (int a = 0; a < d_; ++a)
    if (z[a] < -radius_ || z[a] > radius_) return 0.0;
  return table_[n * cells_ + offset(z)];
}

double SrwKernelTable::box_mass(std::uint64_t n) const {
  if (n > n_max_) throw std::out_of_range("n beyond table");
  const double* layer = table_.data() + n * cells_;
  return std::accumulate(layer, layer + cells_, 0.0);
}

// ---------------------------------------------------------------------------

namespace {

class LogFactorial {
 public:
  explicit LogFactorial(std::uint64_t n) : lf_(n + 1) {
    for (std::uint64_t i = 0; i <= n; ++i) lf_[i] = std::lgamma(static_cast<double>(i) + 1.0);
  }
  double operator()(std::uint64_t i) const { return lf_[i]; }

 private:
  std::vector<double> lf_;
};

std::vector<double> series_1d(std::int64_t x, std::uint64_t n_max, const LogFactorial& lf) {
  std::vector<double> out(n_max + 1, 0.0);
  const std::uint64_t ax = static_cast<std::uint64_t>(std::abs(x));
  const double ln2 = std::log(2.0);
  for (std::uint64_t n = ax; n <= n_max; n += 2) {
    const std::uint64_t k = (n + ax) / 2;
    out[n] = std::exp(lf(n) - lf(k) - lf(n - k) - static_cast<double>(n) * ln2);
  }
  return out;
}

std::vector<double> series(std::span<const std::int64_t> z, std::uint64_t n_max, const LogFactorial& lf) {
  const std::size_t d = z.size();
  if (d == 1) return series_1d(z[0], n_max, lf);
  if (d == 2) {
    auto u = series_1d(z[0] + z[1], n_max, lf);
    const auto v = series_1d(z[0] - z[1], n_max, lf);
    for (std::uint64_t n = 0; n <= n_max; ++n) u[n] *= v[n];
    return u;
  }
  const std::size_t k = d / 2;
  const auto A = series(z.subspan(0, k), n_max, lf);
  const auto B = series(z.subspan(k), n_max, lf);
  const double q = static_cast<double>(k) / static_cast<double>(d);
  const double lq = std::log(q), lr = std::log1p(-q);
  std::vector<double> out(n_max + 1, 0.0);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const double mean = q * static_cast<double>(n);
    const double width = 14.0 * std::sqrt(static_cast<double>(n) * q * (1.0 - q)) + 2.0;
    const auto lo = static_cast<std::uint64_t>(std::max(0.0, std::floor(mean - width)));
    const auto hi = std::min<std::uint64_t>(n, static_cast<std::uint64_t>(std::ceil(mean + width)));
    double s = 0.0;
    for (std::uint64_t m = lo; m <= hi; ++m) {
      const double a = A[m], b = B[n - m];
      if (a == 0.0 || b == 0.0) continue;
      s += std::exp(lf(n) - lf(m) - lf(n - m) + static_cast<double>(m) * lq + static_cast<double>(n - m) * lr) * a * b;
    }
    out[n] = s;
  }
  return out;
}

}  // namespace

std::vector<double> srw_point_series(const Point& z, int d, std::uint64_t n_max) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension out of range");
  const LogFactorial lf(n_max);
  return series(std::span<const std::int64_t>(z.data(), static_cast<std::size_t>(d)), n_max, lf);
}

std::uint64_t truncation_point(const LengthLaw& law, double tolerance, std::uint64_t n_cap) {
  const std::uint64_t top = std::min(law.max_value(), n_cap);
  std::uint64_t n = std::min<std::uint64_t>(16, top);
  while (n < top && law.tail_sum_beyond(n) > tolerance) n = std::min(2 * n, top);
  if (n <= 16 || law.tail_sum_beyond(n) > tolerance) return n;
  // Bisect down to the smallest adequate n.
  std::uint64_t lo = n / 2, hi = n;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (law.tail_sum_beyond(mid) > tolerance)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

RlrwOracle oracle_rlrw_two_point(const LengthLaw& law, const Point& z, int d, double tolerance, std::uint64_t n_cap) {
  const std::uint64_t n_max = truncation_point(law, tolerance, n_cap);
  const auto p = srw_point_series(z, d, n_max);
  double s = 0.0;
  for (std::uint64_t n = 0; n <= n_max; ++n)
    if (p[n] != 0.0) s += law.tail(n) * p[n];
  return {s, law.tail_sum_beyond(n_max), n_max};
}

RlrwOracle oracle_rlrw_two_point(const LengthLaw& law, const Point& z, const SrwKernelTable& table) {
  double s = 0.0;
  for (std::uint64_t n = 0; n <= table.n_max(); ++n) {
    const double p = table.p(n, z);
    if (p != 0.0) s += law.tail(n) * p;
  }
  // Mass that left the box could have returned to z; it adds to the bound.
  return {s, law.tail_sum_beyond(table.n_max()) + table.leaked_mass(table.n_max()), table.n_max()};
}

}  // namespace uwalk
