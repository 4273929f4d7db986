#include "uwalk/enumeration.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uwalk {

std::uint64_t SawEnumeration::total() const {
  std::uint64_t s = 0;
  for (auto c : by_length) s += c;
  return s;
}

std::map<std::int64_t, double> SawEnumeration::length_law(double J) const {
  std::map<std::int64_t, double> out;
  double z = 0.0;
  for (std::size_t n = 0; n < by_length.size(); ++n) z += static_cast<double>(by_length[n]) * std::pow(J, n);
  for (std::size_t n = 0; n < by_length.size(); ++n)
    if (by_length[n]) out[static_cast<std::int64_t>(n)] = static_cast<double>(by_length[n]) * std::pow(J, n) / z;
  return out;
}

std::map<Point, double> SawEnumeration::unwrapped_two_point(double J) const {
  std::map<Point, double> out;
  for (const auto& [key, c] : by_endpoint) out[key.second] += static_cast<double>(c) * std::pow(J, key.first);
  return out;
}

std::map<std::uint64_t, double> SawEnumeration::two_point(double J) const {
  std::map<std::uint64_t, double> out;
  for (const auto& [key, c] : by_endpoint)
    out[spec.index(spec.reduce(key.second))] += static_cast<double>(c) * std::pow(J, key.first);
  return out;
}

namespace {

struct SawDfs {
  const TorusSpec& spec;
  std::uint64_t max_walks;
  SawEnumeration& out;
  std::vector<std::uint8_t> used;
  std::uint64_t seen = 0;

  void run(std::uint64_t v, Point u, std::uint64_t n) {
    if (++seen > max_walks)
      throw std::length_error("SAW enumeration exceeded " + std::to_string(max_walks) + " walks");
    if (out.by_length.size() <= n) out.by_length.resize(n + 1, 0);
    ++out.by_length[n];
    ++out.by_endpoint[{n, u}];
    for (int k = 0; k < 2 * spec.dim(); ++k) {
      const auto s = static_cast<Step>(k);
      const std::uint64_t w = spec.neighbor_index(v, s);
      if (used[w]) continue;
      used[w] = 1;
      Point next = u;
      next[step_axis(s)] += step_sign(s);
      run(w, next, n + 1);
      used[w] = 0;
    }
  }
};

}  // namespace

SawEnumeration enumerate_saw(const TorusSpec& spec, std::uint64_t max_walks) {
  if (spec.dim() > 1 && spec.volume() > 16)
    throw std::length_error("SAW enumeration refused: " + std::to_string(spec.volume()) +
                            " vertices (limit 16 for d > 1)");
  SawEnumeration out{spec, {}, {}};
  SawDfs dfs{spec, max_walks, out, std::vector<std::uint8_t>(spec.volume(), 0)};
  const std::uint64_t origin = spec.index(Point{});
  dfs.used[origin] = 1;
  dfs.run(origin, Point{}, 0);
  return out;
}

// ---------------------------------------------------------------------------

double HighTemperatureEnumeration::lambda(std::uint64_t v, double t) const {
  double s = 0.0;
  const auto& row = by_source.at(v);
  for (std::size_t k = 0; k < row.size(); ++k) s += static_cast<double>(row[k]) * std::pow(t, k);
  return s;
}

double HighTemperatureEnumeration::correlation(std::uint64_t v, double t) const {
  return lambda(v, t) / lambda(spec.index(Point{}), t);
}

std::map<std::int64_t, double> HighTemperatureEnumeration::walk_length_law(double t) const {
  std::map<std::int64_t, double> out;
  double z = 0.0;
  for (const auto& [key, c] : walk_lengths) {
    const double w = static_cast<double>(c) * std::pow(t, key.first);
    out[static_cast<std::int64_t>(key.second)] += w;
    z += w;
  }
  for (auto& [k, p] : out) p /= z;
  return out;
}

std::map<Point, double> HighTemperatureEnumeration::unwrapped_two_point(double t) const {
  const double l0 = lambda(spec.index(Point{}), t);
  std::map<Point, double> out;
  for (const auto& [key, c] : walk_endpoints) out[key.second] += static_cast<double>(c) * std::pow(t, key.first) / l0;
  return out;
}

void for_each_sourced_set(const TorusSpec& spec, const std::function<void(std::span<const std::uint64_t>)>& visit,
                          unsigned max_edges) {
  const std::uint64_t d = static_cast<std::uint64_t>(spec.dim());
  const std::uint64_t m = spec.volume() * d;
  if (m > max_edges || m > 30)
    throw std::length_error("high-temperature enumeration refused: " + std::to_string(m) + " edges (2^" +
                            std::to_string(m) + " subsets), limit " + std::to_string(max_edges));
  std::vector<std::uint64_t> tail(m), head(m);
  for (std::uint64_t e = 0; e < m; ++e) {
    tail[e] = e / d;
    head[e] = spec.neighbor_index(e / d, make_step(static_cast<int>(e % d), +1));
  }
  const std::uint64_t origin = spec.index(Point{});
  std::vector<std::uint8_t> odd(spec.volume(), 0);
  std::uint64_t odd_count = 0, mask = 0;
  std::vector<std::uint64_t> edges;
  auto flip = [&](std::uint64_t v) {
    odd[v] ^= 1;
    odd_count += odd[v] ? 1 : std::uint64_t(-1);
  };
  auto emit = [&] {
    if (odd_count == 0 || (odd_count == 2 && odd[origin])) {
      edges.clear();
      for (std::uint64_t e = 0; e < m; ++e)
        if (mask >> e & 1) edges.push_back(e);
      visit(edges);
    }
  };
  emit();
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << m); ++i) {
    const auto e = static_cast<std::uint64_t>(std::countr_zero(i));
    mask ^= std::uint64_t{1} << e;
    flip(tail[e]);
    flip(head[e]);
    emit();
  }
}

HighTemperatureEnumeration enumerate_high_temperature(const TorusSpec& spec, unsigned max_edges,
                                                      const VertexRank& rank) {
  HighTemperatureEnumeration out{spec, spec.volume() * static_cast<std::uint64_t>(spec.dim()), {}, {}, {}};
  out.by_source.assign(spec.volume(), std::vector<std::uint64_t>(out.edges + 1, 0));
  for_each_sourced_set(
      spec,
      [&](std::span<const std::uint64_t> edges) {
        const EdgeConfig c = EdgeConfig::from_edges(spec, edges);
        const std::uint64_t k = edges.size();
        ++out.by_source[c.head()][k];
        const LatticeWalk w = extract_ising_walk(c, rank);
        ++out.walk_lengths[{k, w.length()}];
        ++out.walk_endpoints[{k, w.unwrapped_endpoint()}];
      },
      max_edges);
  return out;
}

}  // namespace uwalk
