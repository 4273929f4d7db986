#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uwalk/lattice.hpp"
#include "uwalk/rng.hpp"
#include "uwalk/site_map.hpp"

namespace uwalk {

struct BerrettiSokalStats {
  std::uint64_t append_proposed = 0;
  std::uint64_t append_accepted = 0;
  std::uint64_t delete_proposed = 0;
  std::uint64_t delete_accepted = 0;
  std::uint64_t lift_flips = 0;
};

/// Berretti-Sokal chain for rooted self-avoiding walks on a torus with
/// stationary law proportional to J^{|omega|}.
///
/// Reversible mode proposes, with probability 1/2 each, appending a uniform
/// unit step or deleting the last step. Lifted mode carries a grow/shrink
/// label: it always proposes in the labelled direction and flips the label
/// on rejection, which preserves the same stationary walk law.
class BerrettiSokalChain {
 public:
  BerrettiSokalChain(const TorusSpec& spec, double fugacity, bool lifted, Philox4x32 rng);

  /// One Markov transition.
  void step();
  void run(std::uint64_t steps) {
    for (std::uint64_t i = 0; i < steps; ++i) step();
  }

  const TorusSpec& spec() const noexcept { return spec_; }
  double fugacity() const noexcept { return fugacity_; }
  bool lifted() const noexcept { return lifted_; }
  bool growing() const noexcept { return growing_; }
  const LatticeWalk& walk() const noexcept { return walk_; }
  /// Torus vertex indices of omega_0, ..., omega_n.
  std::span<const std::uint64_t> site_indices() const noexcept { return sites_; }
  const BerrettiSokalStats& stats() const noexcept { return stats_; }

  /// Acceptance probabilities min(1, 2dJ) and min(1, 1/(2dJ)).
  double append_acceptance() const noexcept { return accept_append_; }
  double delete_acceptance() const noexcept { return accept_delete_; }

 private:
  bool try_append(Step s);
  bool try_delete();

  TorusSpec spec_;
  double fugacity_;
  bool lifted_;
  bool growing_ = true;
  double accept_append_;
  double accept_delete_;
  Philox4x32 rng_;
  LatticeWalk walk_;
  std::vector<std::uint64_t> sites_;
  SiteIndexMap occupied_;
  BerrettiSokalStats stats_;
};

}  // namespace uwalk
