#pragma once

#include <cstdint>
#include <vector>

#include "uwalk/lattice.hpp"
#include "uwalk/length_law.hpp"

namespace uwalk {

/// Simple random walk transition probabilities p_n(z) = P(S_n = z) on the
/// box ||z||_inf <= radius, for 0 <= n <= n_max, by repeated convolution.
/// Mass pushed outside the box is dropped and tracked.
class SrwKernelTable {
 public:
  /// Throws std::length_error (naming the required size) when the table
  /// would exceed `memory_limit` bytes.
  static SrwKernelTable convolve(int d, std::uint64_t n_max, std::int64_t radius,
                                 std::uint64_t memory_limit = std::uint64_t{1} << 30);

  int dim() const noexcept { return d_; }
  std::uint64_t n_max() const noexcept { return n_max_; }
  std::int64_t radius() const noexcept { return radius_; }

  /// p_n(z); zero outside the box.
  double p(std::uint64_t n, const Point& z) const;
  /// Probability mass that left the box by step n (0 when radius >= n).
  double leaked_mass(std::uint64_t n) const { return leaked_.at(n); }
  /// Total mass held in the box at step n.
  double box_mass(std::uint64_t n) const;

 private:
  SrwKernelTable() = default;
  std::uint64_t offset(const Point& z) const;

  int d_ = 0;
  std::uint64_t n_max_ = 0;
  std::int64_t radius_ = 0;
  std::uint64_t side_ = 0;
  std::uint64_t cells_ = 0;
  std::vector<double> table_;  // layer n at [n * cells_, (n + 1) * cells_)
  std::vector<double> leaked_;
};

/// p_n(z) for every 0 <= n <= n_max at one displacement z. Axes are split
/// recursively into groups, the number of steps spent in each group being
/// binomial; one- and two-dimensional groups use the closed forms
///   p_n(x) = C(n, (n+x)/2) 2^{-n},   p_n(x, y) = p_n(x + y) p_n(x - y).
/// Binomial sums are truncated 14 standard deviations from their mean.
std::vector<double> srw_point_series(const Point& z, int d, std::uint64_t n_max);

struct RlrwOracle {
  double value;
  /// Bound on the omitted terms: sum over n > n_max of P(N >= n).
  double truncation_bound;
  std::uint64_t n_max;
};

/// sum_n P(N >= n) p_n(z): expected number of visits of the Z^d RLRW to z,
/// which is also the unwrapped torus two-point function. n_max is chosen so
/// the truncation bound is below `tolerance` (capped at `n_cap`; check the
/// reported bound).
RlrwOracle oracle_rlrw_two_point(const LengthLaw& law, const Point& z, int d, double tolerance = 1e-9,
                                 std::uint64_t n_cap = 2000000);

/// Same, reading p_n from a precomputed table (n_max is the table's).
RlrwOracle oracle_rlrw_two_point(const LengthLaw& law, const Point& z, const SrwKernelTable& table);

/// Choice of n_max used above.
std::uint64_t truncation_point(const LengthLaw& law, double tolerance, std::uint64_t n_cap);

}  // namespace uwalk
