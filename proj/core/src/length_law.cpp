#include "uwalk/length_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace uwalk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double half_normal_tail(double scale, std::uint64_t n) {
  // P(round(scale |X|) >= n) = P(|X| > (n - 1/2) / scale) for n >= 1.
  return std::erfc((static_cast<double>(n) - 0.5) / (scale * std::sqrt(2.0)));
}

}  // namespace

LengthLaw LengthLaw::deterministic(std::uint64_t n) { return LengthLaw(Deterministic{n}); }

LengthLaw LengthLaw::geometric(double q) {
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("geometric parameter must lie in [0, 1)");
  return LengthLaw(Geometric{q});
}

LengthLaw LengthLaw::scaled_half_normal(double scale, std::uint64_t cap) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("half-normal scale must be positive");
  return LengthLaw(ScaledHalfNormal{scale, cap});
}

LengthLaw LengthLaw::empirical(std::vector<std::uint64_t> weights) {
  if (weights.empty() || std::accumulate(weights.begin(), weights.end(), std::uint64_t{0}) == 0)
    throw std::invalid_argument("empirical length law needs positive total weight");
  while (weights.back() == 0) weights.pop_back();
  return LengthLaw(Empirical{std::move(weights)});
}

LengthLaw LengthLaw::complete_graph(const TorusSpec& spec) {
  const double v = static_cast<double>(spec.volume());
  return scaled_half_normal(std::sqrt(v), spec.volume() - 1);
}

LengthLaw LengthLaw::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "deterministic") return deterministic(parse_u64(rest));
  if (head == "geometric") return geometric(parse_double(rest));
  if (head == "half_normal") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw std::invalid_argument("half_normal needs SCALE:CAP");
    return scaled_half_normal(parse_double(parts[0]), parse_u64(parts[1]));
  }
  if (head == "empirical") {
    std::vector<std::uint64_t> w;
    for (const auto& p : split(rest, ',')) w.push_back(parse_u64(p));
    return empirical(std::move(w));
  }
  throw std::invalid_argument("unknown length law '" + text + "'");
}

std::string LengthLaw::to_string() const {
  return std::visit(
      overloaded{
          [](const Deterministic& k) { return "deterministic:" + std::to_string(k.n); },
          [](const Geometric& k) { return "geometric:" + format_double(k.q); },
          [](const ScaledHalfNormal& k) {
            return "half_normal:" + format_double(k.scale) + ":" + std::to_string(k.cap);
          },
          [](const Empirical& k) {
            std::string s = "empirical:";
            for (std::size_t i = 0; i < k.weights.size(); ++i) {
              if (i) s += ',';
              s += std::to_string(k.weights[i]);
            }
            return s;
          },
      },
      kind_);
}

std::uint64_t LengthLaw::sample(Philox4x32& rng) const {
  return std::visit(
      overloaded{
          [](const Deterministic& k) { return k.n; },
          [&](const Geometric& k) -> std::uint64_t {
            if (k.q == 0.0) return 0;
            const double u = 1.0 - rng.uniform();  // (0, 1]
            return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(k.q)));
          },
          [&](const ScaledHalfNormal& k) {
            const double y = k.scale * std::abs(standard_normal(rng));
            if (y >= static_cast<double>(k.cap)) return k.cap;
            return std::min(k.cap, round_half_even(y));
          },
          [&](const Empirical& k) {
            const std::uint64_t total = std::accumulate(k.weights.begin(), k.weights.end(), std::uint64_t{0});
            std::uint64_t r = rng.below(total);
            for (std::size_t n = 0; n < k.weights.size(); ++n) {
              if (r < k.weights[n]) return static_cast<std::uint64_t>(n);
              r -= k.weights[n];
            }
            return static_cast<std::uint64_t>(k.weights.size() - 1);
          },
      },
      kind_);
}

double LengthLaw::tail(std::uint64_t n) const {
  if (n == 0) return 1.0;
  return std::visit(
      overloaded{
          [&](const Deterministic& k) { return k.n >= n ? 1.0 : 0.0; },
          [&](const Geometric& k) { return std::pow(k.q, static_cast<double>(n)); },
          [&](const ScaledHalfNormal& k) { return n > k.cap ? 0.0 : half_normal_tail(k.scale, n); },
          [&](const Empirical& k) {
            const std::uint64_t total = std::accumulate(k.weights.begin(), k.weights.end(), std::uint64_t{0});
            std::uint64_t above = 0;
            for (std::size_t m = n; m < k.weights.size(); ++m) above += k.weights[m];
            return static_cast<double>(above) / static_cast<double>(total);
          },
      },
      kind_);
}

Rational LengthLaw::tail_exact(std::uint64_t n) const {
  if (n == 0) return Rational(1);
  if (const auto* k = std::get_if<Deterministic>(&kind_)) return Rational(k->n >= n ? 1 : 0);
  if (const auto* k = std::get_if<Empirical>(&kind_)) {
    const std::uint64_t total = std::accumulate(k->weights.begin(), k->weights.end(), std::uint64_t{0});
    std::uint64_t above = 0;
    for (std::size_t m = n; m < k->weights.size(); ++m) above += k->weights[m];
    return Rational(above) / Rational(total);
  }
  throw std::logic_error("exact tails are only available for deterministic and empirical laws");
}

double LengthLaw::tail_sum_beyond(std::uint64_t n_max) const {
  return std::visit(
      overloaded{
          [&](const Deterministic& k) { return k.n > n_max ? static_cast<double>(k.n - n_max) : 0.0; },
          [&](const Geometric& k) {
            return std::pow(k.q, static_cast<double>(n_max + 1)) / (1.0 - k.q);
          },
          [&](const ScaledHalfNormal& k) {
            double s = 0.0;
            for (std::uint64_t m = n_max + 1; m <= k.cap; ++m) {
              const double t = half_normal_tail(k.scale, m);
              s += t;
              if (t < 1e-300) break;
            }
            return s;
          },
          [&](const Empirical& k) {
            double s = 0.0;
            for (std::uint64_t m = n_max + 1; m < k.weights.size(); ++m) s += tail(m);
            return s;
          },
      },
      kind_);
}

std::uint64_t LengthLaw::max_value() const noexcept {
  return std::visit(overloaded{
                        [](const Deterministic& k) { return k.n; },
                        [](const Geometric& k) {
                          return k.q == 0.0 ? std::uint64_t{0} : std::numeric_limits<std::uint64_t>::max();
                        },
                        [](const ScaledHalfNormal& k) { return k.cap; },
                        [](const Empirical& k) { return static_cast<std::uint64_t>(k.weights.size() - 1); },
                    },
                    kind_);
}

double LengthLaw::mean() const {
  if (const auto* k = std::get_if<Geometric>(&kind_)) return k->q / (1.0 - k->q);
  return tail_sum_beyond(0);
}

// ---------------------------------------------------------------------------

std::uint64_t round_half_even(double x) {
  // The default floating-point environment rounds to nearest, ties to even.
  return static_cast<std::uint64_t>(std::nearbyint(x));
}

double standard_normal(Philox4x32& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

std::uint64_t sample_complete_graph_length(const TorusSpec& spec, Philox4x32& rng) {
  const double v = static_cast<double>(spec.volume());
  const double y = std::sqrt(v) * std::abs(standard_normal(rng));
  if (y >= v) return spec.volume();
  return std::min(spec.volume(), round_half_even(y));
}

}  // namespace uwalk
