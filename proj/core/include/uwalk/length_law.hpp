#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "uwalk/lattice.hpp"
#include "uwalk/rng.hpp"

namespace uwalk {

using Rational = boost::multiprecision::cpp_rational;

/// Law of the random walk length N.
class LengthLaw {
 public:
  struct Deterministic {
    std::uint64_t n;
  };
  /// P(N >= n) = q^n, 0 <= q < 1.
  struct Geometric {
    double q;
  };
  /// N = min(cap, round(scale * |X|)), X standard normal, ties to even.
  struct ScaledHalfNormal {
    double scale;
    std::uint64_t cap;
  };
  /// P(N = n) proportional to weights[n].
  struct Empirical {
    std::vector<std::uint64_t> weights;
  };
  using Kind = std::variant<Deterministic, Geometric, ScaledHalfNormal, Empirical>;

  static LengthLaw deterministic(std::uint64_t n);
  static LengthLaw geometric(double q);
  static LengthLaw scaled_half_normal(double scale, std::uint64_t cap);
  static LengthLaw empirical(std::vector<std::uint64_t> weights);

  /// Asymptotic complete-graph SAW length law on a torus of volume V:
  /// scale sqrt(V), capped at V - 1 so that a loop-erased walk of that
  /// length still fits on the torus.
  static LengthLaw complete_graph(const TorusSpec& spec);

  /// Parses "deterministic:N", "geometric:Q", "half_normal:SCALE:CAP",
  /// "empirical:W0,W1,...".
  static LengthLaw parse(const std::string& text);
  std::string to_string() const;

  const Kind& kind() const noexcept { return kind_; }

  std::uint64_t sample(Philox4x32& rng) const;

  /// P(N >= n).
  double tail(std::uint64_t n) const;
  /// P(N >= n) as an exact rational (deterministic and empirical laws only).
  Rational tail_exact(std::uint64_t n) const;
  /// sum over n > n_max of P(N >= n), which bounds the truncation error of
  /// any series sum_n P(N >= n) a_n with 0 <= a_n <= 1.
  double tail_sum_beyond(std::uint64_t n_max) const;
  /// Largest value N can take, or UINT64_MAX when unbounded.
  std::uint64_t max_value() const noexcept;

  double mean() const;

 private:
  explicit LengthLaw(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// |X| for standard normal X, scaled by sqrt(L^d), rounded half-to-even and
/// clamped to [0, L^d].
std::uint64_t sample_complete_graph_length(const TorusSpec& spec, Philox4x32& rng);

/// Standard normal variate (Marsaglia polar method; one value per call).
double standard_normal(Philox4x32& rng);

/// Rounds half to even; x >= 0.
std::uint64_t round_half_even(double x);

}  // namespace uwalk
