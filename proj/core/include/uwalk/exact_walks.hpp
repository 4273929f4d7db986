#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "uwalk/lattice.hpp"
#include "uwalk/length_law.hpp"

namespace uwalk {

/// Exact tables keyed by torus vertex index and by Z^d displacement.
struct ExactTables {
  std::map<std::uint64_t, Rational> torus;
  std::map<Point, Rational> unwrapped;
};

/// Definition-level sums over every walk omega (all (2d)^n step sequences,
/// n <= max N) of P(N >= |omega|) / (2d)^{|omega|}, keyed by the torus
/// endpoint and by the endpoint of W^{-1}(omega). The law must be bounded
/// with exact tails (deterministic or empirical).
ExactTables rlrw_weight_sums(const TorusSpec& spec, const LengthLaw& law);

/// E sum_{n <= N} 1(X_n = x) and E sum_{n <= N} 1(Z_n = z), by propagating
/// the walk's distribution step by step and averaging over N = m.
ExactTables rlrw_expected_visits(const TorusSpec& spec, const LengthLaw& law);

/// Exact law of the random-length loop-erased walk on a small torus.
struct RllerwLaw {
  TorusSpec spec;
  /// P(L = tau), keyed by the step labels of tau.
  std::map<std::vector<Step>, Rational> law;
  std::uint64_t max_length = 0;

  /// rho(eta) = P(L extends eta).
  Rational prefix_probability(std::span<const Step> eta) const;
  /// P(e(L) = x) by torus vertex index.
  std::map<std::uint64_t, Rational> endpoint_law() const;
};

/// Absorption probabilities of the loop-erasure chain, whose states are the
/// erased paths (as step sequences) shorter than the target length, solved
/// by exact rational elimination for each length in the law's support.
/// Refuses max N > 6 or more than 64 vertices.
RllerwLaw exact_rllerw(const TorusSpec& spec, const LengthLaw& law);

/// Definition-level sums over every walk eta (n <= max N) of
/// P(L extends eta), keyed by torus endpoint and by e(W^{-1}(eta)).
ExactTables rllerw_weight_sums(const RllerwLaw& exact);

/// E sum_n 1(L_n = x) by torus vertex, and P[W^{-1}(L) visits z].
ExactTables rllerw_expected_visits(const RllerwLaw& exact);

/// Calls visit(steps) for every step sequence of length <= n_max in
/// lexicographic order of labels.
template <class Visit>
void for_each_step_sequence(int d, std::uint64_t n_max, Visit&& visit) {
  std::vector<Step> steps;
  const auto dirs = static_cast<Step>(2 * d);
  auto rec = [&](auto& self) -> void {
    visit(std::span<const Step>(steps));
    if (steps.size() == n_max) return;
    for (Step s = 0; s < dirs; ++s) {
      steps.push_back(s);
      self(self);
      steps.pop_back();
    }
  };
  rec(rec);
}

}  // namespace uwalk
