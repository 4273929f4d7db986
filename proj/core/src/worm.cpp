#include "uwalk/worm.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_set>

namespace uwalk {

namespace {

constexpr std::uint64_t kMaxEdges = std::uint64_t{1} << 32;

}  // namespace

EdgeConfig::EdgeConfig(const TorusSpec& spec) : spec_(spec), origin_(spec.index(Point{})), head_(origin_) {
  const std::uint64_t edges = spec.volume() * static_cast<std::uint64_t>(spec.dim());
  if (edges > kMaxEdges) throw std::invalid_argument("torus too large for a dense edge table");
  occupied_.assign(edges, 0);
}

EdgeConfig EdgeConfig::from_edges(const TorusSpec& spec, std::span<const std::uint64_t> edges) {
  EdgeConfig c(spec);
  for (std::uint64_t e : edges) {
    if (e >= c.occupied_.size()) throw std::invalid_argument("edge id out of range");
    c.occupied_[e] ^= 1;
    c.occupied_count_ += c.occupied_[e] ? 1 : std::uint64_t(-1);
  }
  const auto odd = c.odd_vertices();
  if (odd.empty()) return c;
  if (odd.size() == 2 && (odd[0] == c.origin_ || odd[1] == c.origin_)) {
    c.head_ = odd[0] == c.origin_ ? odd[1] : odd[0];
    return c;
  }
  throw std::invalid_argument("odd-degree vertices must be empty or {origin, x}");
}

std::uint64_t EdgeConfig::edge_along(std::uint64_t vertex, Step s) const noexcept {
  const auto d = static_cast<std::uint64_t>(spec_.dim());
  const int a = step_axis(s);
  if (step_sign(s) > 0) return vertex * d + a;
  return spec_.neighbor_index(vertex, s) * d + a;
}

void EdgeConfig::move_head(Step s) noexcept {
  const std::uint64_t e = edge_along(head_, s);
  occupied_[e] ^= 1;
  if (occupied_[e])
    ++occupied_count_;
  else
    --occupied_count_;
  head_ = spec_.neighbor_index(head_, s);
}

std::vector<std::uint64_t> EdgeConfig::odd_vertices() const {
  const auto d = static_cast<std::uint64_t>(spec_.dim());
  std::vector<std::uint8_t> deg(spec_.volume(), 0);
  for (std::uint64_t e = 0; e < occupied_.size(); ++e) {
    if (!occupied_[e]) continue;
    const std::uint64_t v = e / d;
    const int a = static_cast<int>(e % d);
    deg[v] ^= 1;
    deg[spec_.neighbor_index(v, make_step(a, +1))] ^= 1;
  }
  std::vector<std::uint64_t> odd;
  for (std::uint64_t v = 0; v < deg.size(); ++v)
    if (deg[v]) odd.push_back(v);
  return odd;
}

std::vector<std::uint64_t> EdgeConfig::occupied_edges() const {
  std::vector<std::uint64_t> out;
  out.reserve(occupied_count_);
  for (std::uint64_t e = 0; e < occupied_.size(); ++e)
    if (occupied_[e]) out.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------

WormChain::WormChain(const TorusSpec& spec, double tanh_beta, Philox4x32 rng)
    : config_(spec), t_(tanh_beta), rng_(rng) {
  if (!(tanh_beta > 0.0)) throw std::invalid_argument("tanh(beta) must be positive");
  accept_add_ = std::min(1.0, t_);
  accept_remove_ = std::min(1.0, 1.0 / t_);
}

void WormChain::step() {
  ++stats_.proposed;
  const auto s = static_cast<Step>(rng_.below(2 * static_cast<std::uint64_t>(config_.spec().dim())));
  const double a = config_.occupied(config_.edge_along(config_.head(), s)) ? accept_remove_ : accept_add_;
  if (a < 1.0 && rng_.uniform() >= a) return;
  config_.move_head(s);
  ++stats_.accepted;
}

// ---------------------------------------------------------------------------

LatticeWalk extract_ising_walk(const EdgeConfig& config, const VertexRank& rank) {
  const TorusSpec& spec = config.spec();
  LatticeWalk walk = LatticeWalk::on_torus(spec);
  if (config.closed()) return walk;

  const auto order = [&](std::uint64_t v) { return rank ? rank(v) : v; };
  const int dirs = 2 * spec.dim();
  std::unordered_set<std::uint64_t> traversed;
  std::uint64_t at = config.origin();
  while (at != config.head()) {
    bool found = false;
    Step best = 0;
    std::uint64_t best_rank = 0, best_edge = 0;
    for (int k = 0; k < dirs; ++k) {
      const auto s = static_cast<Step>(k);
      const std::uint64_t e = config.edge_along(at, s);
      if (!config.occupied(e) || traversed.count(e)) continue;
      const std::uint64_t r = order(spec.neighbor_index(at, s));
      if (!found || r < best_rank || (r == best_rank && e < best_edge)) {
        found = true;
        best = s;
        best_rank = r;
        best_edge = e;
      }
    }
    if (!found) throw std::logic_error("Ising walk construction stalled before reaching the head");
    const bool fresh = traversed.insert(best_edge).second;
    assert(fresh);
    (void)fresh;
    walk.push(best);
    at = spec.neighbor_index(at, best);
  }
  return walk;
}

}  // namespace uwalk
