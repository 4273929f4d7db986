#include "uwalk/random_length.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace uwalk {

RandomLengthWalk rlrw_sample(const LengthLaw& law, const TorusSpec& spec, Philox4x32& rng) {
  RandomLengthWalk out{LatticeWalk::on_torus(spec), LatticeWalk::on_lattice(spec.dim())};
  const std::uint64_t n = law.sample(rng);
  out.torus.reserve(n);
  out.lattice.reserve(n);
  const auto dirs = static_cast<std::uint64_t>(2 * spec.dim());
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto s = static_cast<Step>(rng.below(dirs));
    out.torus.push(s);
    out.lattice.push(s);
  }
  return out;
}

LoopErasedSampler::LoopErasedSampler(const TorusSpec& spec, std::uint64_t budget_factor)
    : spec_(spec),
      budget_(budget_factor * std::max<std::uint64_t>(spec.volume(), 1000)),
      position_(spec.volume()),
      walk_(LatticeWalk::on_torus(spec)) {}

const LatticeWalk& LoopErasedSampler::sample(std::uint64_t n, Philox4x32& rng) {
  if (n >= spec_.volume())
    throw std::invalid_argument("loop-erased length must be below the torus volume L^d");
  position_.erase_all(sites_);
  steps_.clear();
  sites_.clear();
  unwrapped_.clear();

  const std::uint64_t origin = spec_.index(Point{});
  sites_.push_back(origin);
  unwrapped_.push_back(Point{});
  position_.insert(origin, 0);

  const auto dirs = static_cast<std::uint64_t>(2 * spec_.dim());
  std::uint64_t used = 0;
  while (steps_.size() < n) {
    if (++used > budget_)
      throw std::runtime_error("loop-erased walk exceeded its step budget of " + std::to_string(budget_) +
                               " (target length " + std::to_string(n) + ")");
    const auto s = static_cast<Step>(rng.below(dirs));
    const std::uint64_t next = spec_.neighbor_index(sites_.back(), s);
    const std::int32_t seen = position_.find(next);
    if (seen != SiteIndexMap::kAbsent) {
      // Erase the loop: keep omega_0 .. omega_seen.
      const auto keep = static_cast<std::size_t>(seen) + 1;
      for (std::size_t i = keep; i < sites_.size(); ++i) position_.erase(sites_[i]);
      sites_.resize(keep);
      unwrapped_.resize(keep);
      steps_.resize(keep - 1);
      continue;
    }
    Point u = unwrapped_.back();
    u[step_axis(s)] += step_sign(s);
    position_.insert(next, static_cast<std::int32_t>(sites_.size()));
    sites_.push_back(next);
    unwrapped_.push_back(u);
    steps_.push_back(s);
  }
  last_steps_ = used;

  walk_.clear();
  walk_.reserve(steps_.size());
  for (Step s : steps_) walk_.push(s);
  return walk_;
}

LatticeWalk rllerw_sample(const LengthLaw& law, const TorusSpec& spec, Philox4x32& rng) {
  LoopErasedSampler sampler(spec);
  return sampler.sample(law.sample(rng), rng);
}

}  // namespace uwalk
