#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "uwalk/lattice.hpp"
#include "uwalk/rng.hpp"

namespace uwalk {

/// Edge configuration of the high-temperature expansion on a torus.
///
/// Edge (v, a) joins v to v + e_a (wrapped); its id is v * d + a. On L = 2
/// the edges (v, a) and (v + e_a, a) join the same pair of vertices and are
/// kept as distinct parallel edges. The tail is pinned at the origin; the
/// head is the other odd-degree vertex, or the origin when every degree is
/// even.
class EdgeConfig {
 public:
  explicit EdgeConfig(const TorusSpec& spec);

  /// Builds a configuration from a set of edge ids; throws if the odd-degree
  /// vertices are not {} or {origin, x}.
  static EdgeConfig from_edges(const TorusSpec& spec, std::span<const std::uint64_t> edges);

  const TorusSpec& spec() const noexcept { return spec_; }
  /// |A|, the number of occupied edges.
  std::uint64_t edge_count() const noexcept { return occupied_count_; }
  std::uint64_t origin() const noexcept { return origin_; }
  std::uint64_t head() const noexcept { return head_; }
  /// True when the source set is empty.
  bool closed() const noexcept { return head_ == origin_; }

  /// Edge crossed when leaving `vertex` by unit step `s`.
  std::uint64_t edge_along(std::uint64_t vertex, Step s) const noexcept;
  bool occupied(std::uint64_t edge) const noexcept { return occupied_[edge] != 0; }

  /// Toggles the edge crossed by moving the head one step and moves the head.
  void move_head(Step s) noexcept;

  /// Odd-degree vertices, recomputed from the edge set.
  std::vector<std::uint64_t> odd_vertices() const;
  std::vector<std::uint64_t> occupied_edges() const;

 private:
  TorusSpec spec_;
  std::uint64_t origin_;
  std::uint64_t head_;
  std::uint64_t occupied_count_ = 0;
  std::vector<std::uint8_t> occupied_;
};

struct WormStats {
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
};

/// Worm chain with the tail fixed at the origin. Each step moves the head
/// to a uniformly chosen neighbour, toggling the crossed edge, accepted with
/// probability min(1, t^{+-1}) where t = tanh(beta). Stationary law is
/// proportional to t^{|A|} on configurations with sources {} or {0, x}.
class WormChain {
 public:
  WormChain(const TorusSpec& spec, double tanh_beta, Philox4x32 rng);

  void step();
  void run(std::uint64_t steps) {
    for (std::uint64_t i = 0; i < steps; ++i) step();
  }

  const EdgeConfig& config() const noexcept { return config_; }
  double tanh_beta() const noexcept { return t_; }
  const WormStats& stats() const noexcept { return stats_; }
  double add_acceptance() const noexcept { return accept_add_; }
  double remove_acceptance() const noexcept { return accept_remove_; }

 private:
  EdgeConfig config_;
  double t_;
  double accept_add_;
  double accept_remove_;
  Philox4x32 rng_;
  WormStats stats_;
};

/// Rank of a vertex index in a total order; smaller rank is "smaller".
using VertexRank = std::function<std::uint64_t(std::uint64_t vertex)>;

/// Ising walk of a configuration: the zero-length walk when there are no
/// sources, otherwise the trail from the origin that repeatedly crosses the
/// untraversed occupied incident edge leading to the smallest neighbour,
/// stopping on first arrival at the head. Parallel edges to the same
/// neighbour are tried in increasing edge id. The default order is the
/// lexicographic order of coordinates, which is the vertex index order.
LatticeWalk extract_ising_walk(const EdgeConfig& config, const VertexRank& rank = {});

}  // namespace uwalk
