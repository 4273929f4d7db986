#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace uwalk {

/// Largest spatial dimension supported by the fixed-width point type.
inline constexpr int kMaxDim = 8;

/// Integer lattice point. Axes at or beyond the working dimension are zero.
using Point = std::array<std::int64_t, kMaxDim>;

/// Unit step label: 2*axis for +e_axis, 2*axis+1 for -e_axis.
using Step = std::uint8_t;

constexpr Step make_step(int axis, int sign) noexcept {
  return static_cast<Step>(2 * axis + (sign < 0 ? 1 : 0));
}
constexpr int step_axis(Step s) noexcept { return s >> 1; }
constexpr int step_sign(Step s) noexcept { return (s & 1) ? -1 : 1; }
constexpr Step reverse_step(Step s) noexcept { return static_cast<Step>(s ^ 1); }

std::int64_t l1_norm(const Point& p, int d) noexcept;
double euclidean_norm(const Point& p, int d) noexcept;
std::string format_point(const Point& p, int d);

/// True iff n + ||z||_1 is even, i.e. an n-step walk can end at z.
bool parity(std::uint64_t n, const Point& z, int d) noexcept;

/// Period-L torus in d dimensions with vertex set [-L/2, L/2)^d.
class TorusSpec {
 public:
  TorusSpec(int d, std::int64_t L);

  int dim() const noexcept { return d_; }
  std::int64_t period() const noexcept { return L_; }
  /// Smallest coordinate value, -floor(L/2).
  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return lo_ + L_ - 1; }
  /// Number of vertices L^d.
  std::uint64_t volume() const noexcept { return volume_; }

  bool contains(const Point& p) const noexcept;

  /// One step of the wrapping recursion: x + s if that lies in the torus,
  /// otherwise x + (1 - L) s.
  Point wrap_step(const Point& x, Step s) const noexcept;

  /// Maps each coordinate of an arbitrary Z^d point into [lo, hi].
  Point reduce(const Point& z) const noexcept;

  /// Vertex index with axis 0 most significant, so index order is the
  /// lexicographic order on (x_1, ..., x_d).
  std::uint64_t index(const Point& p) const noexcept;
  Point point(std::uint64_t index) const noexcept;
  std::uint64_t neighbor_index(std::uint64_t index, Step s) const noexcept;

  friend bool operator==(const TorusSpec&, const TorusSpec&) = default;

 private:
  int d_;
  std::int64_t L_;
  std::int64_t lo_;
  std::uint64_t volume_;
  std::array<std::uint64_t, kMaxDim> stride_{};
};

/// Rooted walk on Z^d or on a torus, stored as its unit-step labels.
///
/// Both the endpoint in the walk's own space and the endpoint of its Z^d
/// lift are maintained incrementally, so appending, deleting and reading
/// the unwrapped endpoint are O(d).
class LatticeWalk {
 public:
  static LatticeWalk on_lattice(int d);
  static LatticeWalk on_torus(const TorusSpec& spec);

  bool is_torus() const noexcept { return torus_.has_value(); }
  const std::optional<TorusSpec>& torus() const noexcept { return torus_; }
  int dim() const noexcept { return d_; }
  std::size_t length() const noexcept { return steps_.size(); }
  std::span<const Step> steps() const noexcept { return steps_; }

  void push(Step s);
  void pop();
  void clear() noexcept;
  void reserve(std::size_t n) { steps_.reserve(n); }

  /// Endpoint in the walk's own space (torus vertex for torus walks).
  const Point& endpoint() const noexcept { return end_; }
  /// Endpoint of the Z^d walk with the same steps.
  const Point& unwrapped_endpoint() const noexcept { return unwrapped_end_; }

  /// Materializes omega_0, ..., omega_n.
  std::vector<Point> sites() const;

  friend bool operator==(const LatticeWalk& a, const LatticeWalk& b) {
    return a.d_ == b.d_ && a.torus_ == b.torus_ && a.steps_ == b.steps_;
  }

 private:
  LatticeWalk(int d, std::optional<TorusSpec> torus);

  int d_;
  std::optional<TorusSpec> torus_;
  std::vector<Step> steps_;
  Point end_{};
  Point unwrapped_end_{};
};

/// Wrapping bijection from Z^d walks to torus walks.
LatticeWalk wrap(const LatticeWalk& zwalk, const TorusSpec& spec);

/// Inverse of wrap.
LatticeWalk unwrap(const LatticeWalk& twalk);

/// Parses a Z^d site sequence rooted at the origin. Throws
/// std::invalid_argument on non-unit steps or a non-zero root.
LatticeWalk lattice_walk_from_sites(int d, std::span<const Point> sites);

/// Parses a torus site sequence. Each consecutive pair must be related by
/// wrap_step for exactly one unit step; on L = 2 every step is ambiguous
/// and the call throws std::invalid_argument.
LatticeWalk torus_walk_from_sites(const TorusSpec& spec, std::span<const Point> sites);

/// floor(|(unwrapped endpoint)_axis| / L) for a torus walk.
std::uint64_t winding_number(const LatticeWalk& twalk, int axis = 0);

}  // namespace uwalk
