#include "uwalk/saw.hpp"

#include <algorithm>
#include <stdexcept>

namespace uwalk {

BerrettiSokalChain::BerrettiSokalChain(const TorusSpec& spec, double fugacity, bool lifted, Philox4x32 rng)
    : spec_(spec),
      fugacity_(fugacity),
      lifted_(lifted),
      rng_(rng),
      walk_(LatticeWalk::on_torus(spec)),
      occupied_(spec.volume()) {
  if (!(fugacity > 0.0)) throw std::invalid_argument("fugacity must be positive");
  const double ratio = 2.0 * spec.dim() * fugacity;
  accept_append_ = std::min(1.0, ratio);
  accept_delete_ = std::min(1.0, 1.0 / ratio);
  const std::uint64_t origin = spec.index(Point{});
  sites_.push_back(origin);
  occupied_.insert(origin, 0);
}

bool BerrettiSokalChain::try_append(Step s) {
  ++stats_.append_proposed;
  const std::uint64_t next = spec_.neighbor_index(sites_.back(), s);
  if (occupied_.contains(next)) return false;
  if (accept_append_ < 1.0 && rng_.uniform() >= accept_append_) return false;
  occupied_.insert(next, static_cast<std::int32_t>(sites_.size()));
  sites_.push_back(next);
  walk_.push(s);
  ++stats_.append_accepted;
  return true;
}

bool BerrettiSokalChain::try_delete() {
  ++stats_.delete_proposed;
  if (walk_.length() == 0) return false;
  if (accept_delete_ < 1.0 && rng_.uniform() >= accept_delete_) return false;
  occupied_.erase(sites_.back());
  sites_.pop_back();
  walk_.pop();
  ++stats_.delete_accepted;
  return true;
}

void BerrettiSokalChain::step() {
  const auto dirs = static_cast<std::uint64_t>(2 * spec_.dim());
  if (!lifted_) {
    const std::uint64_t r = rng_.below(2 * dirs);
    if (r < dirs)
      try_append(static_cast<Step>(r));
    else
      try_delete();
    return;
  }
  const bool moved = growing_ ? try_append(static_cast<Step>(rng_.below(dirs))) : try_delete();
  if (!moved) {
    growing_ = !growing_;
    ++stats_.lift_flips;
  }
}

}  // namespace uwalk
