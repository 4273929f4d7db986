#include "uwalk/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace uwalk {

std::int64_t l1_norm(const Point& p, int d) noexcept {
  std::int64_t s = 0;
  for (int i = 0; i < d; ++i) s += std::abs(p[i]);
  return s;
}

double euclidean_norm(const Point& p, int d) noexcept {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += static_cast<double>(p[i]) * static_cast<double>(p[i]);
  return std::sqrt(s);
}

std::string format_point(const Point& p, int d) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < d; ++i) {
    if (i) os << ',';
    os << p[i];
  }
  os << ')';
  return os.str();
}

bool parity(std::uint64_t n, const Point& z, int d) noexcept {
  return ((n + static_cast<std::uint64_t>(l1_norm(z, d))) & 1u) == 0;
}

// ---------------------------------------------------------------------------

TorusSpec::TorusSpec(int d, std::int64_t L) : d_(d), L_(L), lo_(-(L / 2)), volume_(1) {
  if (d < 1 || d > kMaxDim)
    throw std::invalid_argument("torus dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
  if (L < 2) throw std::invalid_argument("torus period must be at least 2");
  for (int i = d - 1; i >= 0; --i) {
    stride_[i] = volume_;
    if (volume_ > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(L))
      throw std::invalid_argument("torus volume overflows 64 bits");
    volume_ *= static_cast<std::uint64_t>(L);
  }
}

bool TorusSpec::contains(const Point& p) const noexcept {
  for (int i = 0; i < d_; ++i)
    if (p[i] < lo_ || p[i] > lo_ + L_ - 1) return false;
  for (int i = d_; i < kMaxDim; ++i)
    if (p[i] != 0) return false;
  return true;
}

Point TorusSpec::wrap_step(const Point& x, Step s) const noexcept {
  Point y = x;
  const int a = step_axis(s);
  const std::int64_t e = step_sign(s);
  y[a] += e;
  if (!contains(y)) y[a] = x[a] + (1 - L_) * e;
  return y;
}

Point TorusSpec::reduce(const Point& z) const noexcept {
  Point y{};
  for (int i = 0; i < d_; ++i) {
    std::int64_t r = (z[i] - lo_) % L_;
    if (r < 0) r += L_;
    y[i] = r + lo_;
  }
  return y;
}

std::uint64_t TorusSpec::index(const Point& p) const noexcept {
  std::uint64_t idx = 0;
  for (int i = 0; i < d_; ++i) idx += static_cast<std::uint64_t>(p[i] - lo_) * stride_[i];
  return idx;
}

Point TorusSpec::point(std::uint64_t index) const noexcept {
  Point p{};
  for (int i = 0; i < d_; ++i) {
    p[i] = static_cast<std::int64_t>(index / stride_[i]) + lo_;
    index %= stride_[i];
  }
  return p;
}

std::uint64_t TorusSpec::neighbor_index(std::uint64_t index, Step s) const noexcept {
  const int a = step_axis(s);
  const std::uint64_t L = static_cast<std::uint64_t>(L_);
  const std::uint64_t c = (index / stride_[a]) % L;
  if (step_sign(s) > 0) return c + 1 == L ? index - c * stride_[a] : index + stride_[a];
  return c == 0 ? index + (L - 1) * stride_[a] : index - stride_[a];
}

// ---------------------------------------------------------------------------

LatticeWalk::LatticeWalk(int d, std::optional<TorusSpec> torus) : d_(d), torus_(std::move(torus)) {
  if (d < 1 || d > kMaxDim)
    throw std::invalid_argument("walk dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
}

LatticeWalk LatticeWalk::on_lattice(int d) { return LatticeWalk(d, std::nullopt); }

LatticeWalk LatticeWalk::on_torus(const TorusSpec& spec) { return LatticeWalk(spec.dim(), spec); }

void LatticeWalk::push(Step s) {
  steps_.push_back(s);
  unwrapped_end_[step_axis(s)] += step_sign(s);
  if (torus_)
    end_ = torus_->wrap_step(end_, s);
  else
    end_ = unwrapped_end_;
}

void LatticeWalk::pop() {
  if (steps_.empty()) throw std::logic_error("pop on a zero-length walk");
  const Step s = steps_.back();
  steps_.pop_back();
  unwrapped_end_[step_axis(s)] -= step_sign(s);
  if (torus_)
    end_ = torus_->wrap_step(end_, reverse_step(s));
  else
    end_ = unwrapped_end_;
}

void LatticeWalk::clear() noexcept {
  steps_.clear();
  end_ = Point{};
  unwrapped_end_ = Point{};
}

std::vector<Point> LatticeWalk::sites() const {
  std::vector<Point> out;
  out.reserve(steps_.size() + 1);
  Point x{};
  out.push_back(x);
  for (Step s : steps_) {
    if (torus_) {
      x = torus_->wrap_step(x, s);
    } else {
      x[step_axis(s)] += step_sign(s);
    }
    out.push_back(x);
  }
  return out;
}

LatticeWalk wrap(const LatticeWalk& zwalk, const TorusSpec& spec) {
  if (zwalk.is_torus()) throw std::invalid_argument("wrap expects a Z^d walk");
  if (zwalk.dim() != spec.dim()) throw std::invalid_argument("wrap: dimension mismatch");
  LatticeWalk t = LatticeWalk::on_torus(spec);
  t.reserve(zwalk.length());
  for (Step s : zwalk.steps()) t.push(s);
  return t;
}

LatticeWalk unwrap(const LatticeWalk& twalk) {
  if (!twalk.is_torus()) throw std::invalid_argument("unwrap expects a torus walk");
  LatticeWalk z = LatticeWalk::on_lattice(twalk.dim());
  z.reserve(twalk.length());
  for (Step s : twalk.steps()) z.push(s);
  return z;
}

namespace {

void check_root(std::span<const Point> sites) {
  if (sites.empty()) throw std::invalid_argument("walk must contain at least the root");
  if (sites.front() != Point{}) throw std::invalid_argument("walk must be rooted at the origin");
}

}  // namespace

LatticeWalk lattice_walk_from_sites(int d, std::span<const Point> sites) {
  check_root(sites);
  LatticeWalk w = LatticeWalk::on_lattice(d);
  w.reserve(sites.size() - 1);
  for (std::size_t i = 1; i < sites.size(); ++i) {
    const Point& a = sites[i - 1];
    const Point& b = sites[i];
    int axis = -1;
    std::int64_t delta = 0;
    bool ok = true;
    for (int k = 0; k < kMaxDim; ++k) {
      const std::int64_t diff = b[k] - a[k];
      if (diff == 0) continue;
      if (axis >= 0 || k >= d || std::abs(diff) != 1) {
        ok = false;
        break;
      }
      axis = k;
      delta = diff;
    }
    if (!ok || axis < 0)
      throw std::invalid_argument("non-unit step at position " + std::to_string(i));
    w.push(make_step(axis, static_cast<int>(delta)));
  }
  return w;
}

LatticeWalk torus_walk_from_sites(const TorusSpec& spec, std::span<const Point> sites) {
  check_root(sites);
  if (spec.period() == 2 && sites.size() > 1)
    throw std::invalid_argument("torus site sequences are ambiguous on L = 2; use step labels");
  LatticeWalk w = LatticeWalk::on_torus(spec);
  w.reserve(sites.size() - 1);
  for (std::size_t i = 1; i < sites.size(); ++i) {
    if (!spec.contains(sites[i]))
      throw std::invalid_argument("site " + std::to_string(i) + " lies outside the torus");
    int matches = 0;
    Step found = 0;
    for (int s = 0; s < 2 * spec.dim(); ++s) {
      if (spec.wrap_step(sites[i - 1], static_cast<Step>(s)) == sites[i]) {
        ++matches;
        found = static_cast<Step>(s);
      }
    }
    if (matches != 1)
      throw std::invalid_argument("non-unit torus step at position " + std::to_string(i));
    w.push(found);
  }
  return w;
}

std::uint64_t winding_number(const LatticeWalk& twalk, int axis) {
  if (!twalk.is_torus()) throw std::invalid_argument("winding number needs a torus walk");
  if (axis < 0 || axis >= twalk.dim()) throw std::out_of_range("winding axis out of range");
  const std::int64_t x = std::abs(twalk.unwrapped_endpoint()[axis]);
  return static_cast<std::uint64_t>(x / twalk.torus()->period());
}

}  // namespace uwalk
