#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "uwalk/lattice.hpp"
#include "uwalk/worm.hpp"

namespace uwalk {

/// Every rooted self-avoiding torus walk, counted by length and by
/// (length, unwrapped endpoint). Weights J^{|omega|} are applied afterwards.
struct SawEnumeration {
  TorusSpec spec;
  std::vector<std::uint64_t> by_length;
  std::map<std::pair<std::uint64_t, Point>, std::uint64_t> by_endpoint;

  std::uint64_t total() const;
  /// P(|S| = n) under J^{|omega|}.
  std::map<std::int64_t, double> length_law(double J) const;
  /// g~(z) = sum_omega J^{|omega|} 1(e(W^{-1} omega) = z) (the empty walk has weight 1).
  std::map<Point, double> unwrapped_two_point(double J) const;
  /// g(x) keyed by torus vertex index.
  std::map<std::uint64_t, double> two_point(double J) const;
};

/// Depth-first enumeration. Refuses (std::length_error) tori with more than
/// 16 vertices unless d = 1, and aborts once `max_walks` walks are seen.
SawEnumeration enumerate_saw(const TorusSpec& spec, std::uint64_t max_walks = 50'000'000);

/// Every edge subset A of the torus multigraph whose odd-degree vertices are
/// {} or {origin, v}, counted by source and size, plus the law of the Ising
/// walk T(A).
struct HighTemperatureEnumeration {
  TorusSpec spec;
  std::uint64_t edges = 0;
  /// by_source[v][k]: sets with |A| = k and odd vertices {0, v}; v = origin
  /// holds the even sets.
  std::vector<std::vector<std::uint64_t>> by_source;
  /// (|A|, |T(A)|) -> count over all sourced sets.
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> walk_lengths;
  /// (|A|, e(W^{-1} T(A))) -> count.
  std::map<std::pair<std::uint64_t, Point>, std::uint64_t> walk_endpoints;

  /// lambda(C_v) = sum_{A in C_v} t^{|A|}.
  double lambda(std::uint64_t v, double t) const;
  /// E(sigma_0 sigma_v) = lambda(C_v) / lambda(C_0).
  double correlation(std::uint64_t v, double t) const;
  /// P(|T| = k) under t^{|A|} on the union of the C_x.
  std::map<std::int64_t, double> walk_length_law(double t) const;
  /// g~(z) of the Ising walk: sum_A t^{|A|} 1(e(W^{-1} T(A)) = z) / lambda(C_0).
  std::map<Point, double> unwrapped_two_point(double t) const;
};

/// Visits every sourced edge set (as a sorted list of edge ids) by Gray-code
/// order. Refuses more than `max_edges` edges.
void for_each_sourced_set(const TorusSpec& spec, const std::function<void(std::span<const std::uint64_t>)>& visit,
                          unsigned max_edges = 20);

HighTemperatureEnumeration enumerate_high_temperature(const TorusSpec& spec, unsigned max_edges = 20,
                                                      const VertexRank& rank = {});

}  // namespace uwalk
