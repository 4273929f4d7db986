#include "uwalk/site_map.hpp"

#include <stdexcept>

namespace uwalk {

SiteIndexMap::SiteIndexMap(std::uint64_t volume, std::uint64_t dense_limit) : dense_(volume <= dense_limit) {
  if (dense_) {
    table_.assign(volume, kAbsent);
  } else {
    slots_.resize(1024);
    mask_ = slots_.size() - 1;
    shift_ = 64 - 10;
  }
}

void SiteIndexMap::insert(std::uint64_t key, std::int32_t value) {
  if (value < 0) throw std::invalid_argument("SiteIndexMap values must be non-negative");
  if (dense_) {
    if (table_[key] == kAbsent) ++size_;
    table_[key] = value;
    return;
  }
  if (2 * (size_ + 1) > slots_.size()) grow();
  std::uint64_t slot = hash(key);
  for (;;) {
    Entry& e = slots_[slot];
    if (e.value == kAbsent) {
      e.key = key;
      e.value = value;
      ++size_;
      return;
    }
    if (e.key == key) {
      e.value = value;
      return;
    }
    slot = (slot + 1) & mask_;
  }
}

void SiteIndexMap::erase(std::uint64_t key) noexcept {
  if (dense_) {
    if (table_[key] != kAbsent) --size_;
    table_[key] = kAbsent;
    return;
  }
  std::uint64_t i = hash(key);
  for (;;) {
    if (slots_[i].value == kAbsent) return;
    if (slots_[i].key == key) break;
    i = (i + 1) & mask_;
  }
  --size_;
  // Backward-shift: pull later members of the probe run into the hole.
  std::uint64_t j = i;
  for (;;) {
    slots_[i].value = kAbsent;
    for (;;) {
      j = (j + 1) & mask_;
      if (slots_[j].value == kAbsent) return;
      const std::uint64_t home = hash(slots_[j].key);
      const bool movable = (i <= j) ? (home <= i || home > j) : (home <= i && home > j);
      if (movable) break;
    }
    slots_[i] = slots_[j];
    i = j;
  }
}

void SiteIndexMap::grow() {
  std::vector<Entry> old;
  old.swap(slots_);
  slots_.assign(old.size() * 2, Entry{});
  mask_ = slots_.size() - 1;
  --shift_;
  size_ = 0;
  for (const Entry& e : old)
    if (e.value != kAbsent) insert(e.key, e.value);
}

}  // namespace uwalk
