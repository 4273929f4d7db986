#include "uwalk/exact_walks.hpp"

#include <algorithm>
#include <stdexcept>

namespace uwalk {

namespace {

std::uint64_t bounded_max(const LengthLaw& law) {
  const std::uint64_t m = law.max_value();
  if (m > 64) throw std::invalid_argument("exact walk sums need a length law bounded by 64");
  return m;
}

Rational point_mass(const LengthLaw& law, std::uint64_t m) { return law.tail_exact(m) - law.tail_exact(m + 1); }

LatticeWalk torus_walk(const TorusSpec& spec, std::span<const Step> steps) {
  LatticeWalk w = LatticeWalk::on_torus(spec);
  for (Step s : steps) w.push(s);
  return w;
}

// Solves A^T y = b in place by Gauss-Jordan elimination.
std::vector<Rational> solve_transposed(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[j][i];
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw std::runtime_error("singular absorption system");
    std::swap(m[piv], m[c]);
    std::swap(b[piv], b[c]);
    const Rational inv = 1 / m[c][c];
    for (std::size_t j = c; j < n; ++j) m[c][j] *= inv;
    b[c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
      b[r] -= f * b[c];
    }
  }
  return b;
}

}  // namespace

ExactTables rlrw_weight_sums(const TorusSpec& spec, const LengthLaw& law) {
  const std::uint64_t n_max = bounded_max(law);
  const Rational dirs = 2 * spec.dim();
  std::vector<Rational> weight(n_max + 1);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    Rational p = 1;
    for (std::uint64_t i = 0; i < n; ++i) p /= dirs;
    weight[n] = law.tail_exact(n) * p;
  }
  ExactTables out;
  for_each_step_sequence(spec.dim(), n_max, [&](std::span<const Step> steps) {
    const LatticeWalk w = torus_walk(spec, steps);
    const Rational& rho = weight[steps.size()];
    out.torus[spec.index(w.endpoint())] += rho;
    out.unwrapped[w.unwrapped_endpoint()] += rho;
  });
  return out;
}

ExactTables rlrw_expected_visits(const TorusSpec& spec, const LengthLaw& law) {
  const std::uint64_t n_max = bounded_max(law);
  const int d = spec.dim();
  const Rational share = Rational(1) / (2 * d);

  std::map<std::uint64_t, Rational> tdist{{spec.index(Point{}), Rational(1)}}, tcum;
  std::map<Point, Rational> zdist{{Point{}, Rational(1)}}, zcum;
  ExactTables out;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    // visits up to time n, weighted by P(N = n)
    for (const auto& [v, p] : tdist) tcum[v] += p;
    for (const auto& [z, p] : zdist) zcum[z] += p;
    const Rational pm = point_mass(law, n);
    if (pm != 0) {
      for (const auto& [v, c] : tcum) out.torus[v] += pm * c;
      for (const auto& [z, c] : zcum) out.unwrapped[z] += pm * c;
    }
    std::map<std::uint64_t, Rational> tnext;
    std::map<Point, Rational> znext;
    for (const auto& [v, p] : tdist)
      for (int k = 0; k < 2 * d; ++k) tnext[spec.neighbor_index(v, static_cast<Step>(k))] += p * share;
    for (const auto& [z, p] : zdist)
      for (int k = 0; k < 2 * d; ++k) {
        Point y = z;
        y[step_axis(static_cast<Step>(k))] += step_sign(static_cast<Step>(k));
        znext[y] += p * share;
      }
    tdist.swap(tnext);
    zdist.swap(znext);
  }
  // Drop exact zeros so the tables compare key-for-key with the weight sums.
  std::erase_if(out.torus, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(out.unwrapped, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// ---------------------------------------------------------------------------

Rational RllerwLaw::prefix_probability(std::span<const Step> eta) const {
  Rational s = 0;
  const std::vector<Step> key(eta.begin(), eta.end());
  for (auto it = law.lower_bound(key); it != law.end(); ++it) {
    const auto& tau = it->first;
    if (tau.size() < key.size() || !std::equal(key.begin(), key.end(), tau.begin())) break;
    s += it->second;
  }
  return s;
}

std::map<std::uint64_t, Rational> RllerwLaw::endpoint_law() const {
  std::map<std::uint64_t, Rational> out;
  for (const auto& [tau, p] : law) out[spec.index(torus_walk(spec, tau).endpoint())] += p;
  return out;
}

RllerwLaw exact_rllerw(const TorusSpec& spec, const LengthLaw& law) {
  const std::uint64_t n_max = law.max_value();
  if (n_max > 6 || spec.volume() > 64)
    throw std::length_error("exact RLLERW refused: needs max N <= 6 and at most 64 vertices");
  if (n_max >= spec.volume()) throw std::invalid_argument("loop-erased length must be below L^d");
  const int d = spec.dim();
  const Rational share = Rational(1) / (2 * d);
  RllerwLaw out{spec, {}, n_max};

  for (std::uint64_t m = 0; m <= n_max; ++m) {
    const Rational pm = point_mass(law, m);
    if (pm == 0) continue;
    if (m == 0) {
      out.law[{}] += pm;
      continue;
    }
    // Transient states: erased paths of length < m reachable from the root.
    std::map<std::vector<Step>, std::size_t> id;
    std::vector<std::vector<Step>> states{{}};
    id[{}] = 0;
    struct Move {
      std::size_t from;
      bool absorbed;
      std::size_t to;           // transient target
      std::vector<Step> final;  // absorbed walk
    };
    std::vector<Move> moves;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const std::vector<Step> path = states[i];
      const LatticeWalk w = torus_walk(spec, path);
      const auto sites = w.sites();
      std::vector<std::uint64_t> idx;
      for (const auto& p : sites) idx.push_back(spec.index(p));
      for (int k = 0; k < 2 * d; ++k) {
        const auto s = static_cast<Step>(k);
        const std::uint64_t y = spec.neighbor_index(idx.back(), s);
        std::vector<Step> next;
        auto hit = std::find(idx.begin(), idx.end(), y);
        if (hit != idx.end())
          next.assign(path.begin(), path.begin() + (hit - idx.begin()));
        else {
          next = path;
          next.push_back(s);
        }
        if (next.size() == m) {
          moves.push_back({i, true, 0, next});
          continue;
        }
        auto [it, fresh] = id.emplace(next, states.size());
        if (fresh) states.push_back(next);
        moves.push_back({i, false, it->second, {}});
      }
    }
    const std::size_t n = states.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
    for (const auto& mv : moves)
      if (!mv.absorbed) a[mv.from][mv.to] -= share;
    std::vector<Rational> e0(n);
    e0[0] = 1;
    const auto visits = solve_transposed(std::move(a), std::move(e0));
    for (const auto& mv : moves)
      if (mv.absorbed) out.law[mv.final] += pm * visits[mv.from] * share;
  }
  return out;
}

ExactTables rllerw_weight_sums(const RllerwLaw& exact) {
  ExactTables out;
  for_each_step_sequence(exact.spec.dim(), exact.max_length, [&](std::span<const Step> eta) {
    const Rational rho = exact.prefix_probability(eta);
    if (rho == 0) return;
    const LatticeWalk w = torus_walk(exact.spec, eta);
    out.torus[exact.spec.index(w.endpoint())] += rho;
    out.unwrapped[w.unwrapped_endpoint()] += rho;
  });
  return out;
}

ExactTables rllerw_expected_visits(const RllerwLaw& exact) {
  ExactTables out;
  for (const auto& [tau, p] : exact.law) {
    const LatticeWalk w = torus_walk(exact.spec, tau);
    for (const Point& x : w.sites()) out.torus[exact.spec.index(x)] += p;
    LatticeWalk z = LatticeWalk::on_lattice(exact.spec.dim());
    std::vector<Point> seen{z.endpoint()};
    for (Step s : tau) {
      z.push(s);
      seen.push_back(z.endpoint());
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (const Point& q : seen) out.unwrapped[q] += p;
  }
  return out;
}

}  // namespace uwalk
