#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uwalk/lattice.hpp"
#include "uwalk/length_law.hpp"
#include "uwalk/rng.hpp"
#include "uwalk/site_map.hpp"

namespace uwalk {

struct RandomLengthWalk {
  LatticeWalk torus;    // X = W(Z)
  LatticeWalk lattice;  // Z
};

/// Random-length random walk: draws N from the law, then N uniform unit steps.
RandomLengthWalk rlrw_sample(const LengthLaw& law, const TorusSpec& spec, Philox4x32& rng);

/// Allocation-free variant for hot loops: calls visit(point) for each site
/// S_0, ..., S_N of the Z^d walk and returns N.
template <class Visit>
std::uint64_t rlrw_visit(const LengthLaw& law, int d, Philox4x32& rng, Visit&& visit) {
  const std::uint64_t n = law.sample(rng);
  Point x{};
  visit(x);
  const auto dirs = static_cast<std::uint64_t>(2 * d);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto s = static_cast<Step>(rng.below(dirs));
    x[step_axis(s)] += step_sign(s);
    visit(x);
  }
  return n;
}

/// Chronological loop erasure of the wrapped simple random walk, stopped the
/// first time the erased path has a prescribed length. Buffers are reused
/// across samples.
class LoopErasedSampler {
 public:
  /// `budget_factor` bounds the random-walk steps per sample at
  /// budget_factor * max(L^d, 1000); exceeding it throws std::runtime_error.
  explicit LoopErasedSampler(const TorusSpec& spec, std::uint64_t budget_factor = 100000);

  /// Samples the erased walk of length n <= L^d - 1.
  const LatticeWalk& sample(std::uint64_t n, Philox4x32& rng);

  const LatticeWalk& walk() const noexcept { return walk_; }
  /// Z^d lift of the erased path, one point per site.
  std::span<const Point> unwrapped_path() const noexcept { return unwrapped_; }
  /// Simple random walk steps used by the last sample.
  std::uint64_t last_walk_steps() const noexcept { return last_steps_; }

 private:
  TorusSpec spec_;
  std::uint64_t budget_;
  SiteIndexMap position_;
  std::vector<Step> steps_;
  std::vector<std::uint64_t> sites_;
  std::vector<Point> unwrapped_;
  LatticeWalk walk_;
  std::uint64_t last_steps_ = 0;
};

/// Random-length loop-erased random walk with N drawn from `law`.
LatticeWalk rllerw_sample(const LengthLaw& law, const TorusSpec& spec, Philox4x32& rng);

}  // namespace uwalk
