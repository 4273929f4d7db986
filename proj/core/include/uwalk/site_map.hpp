#pragma once

#include <cstdint>
#include <vector>

namespace uwalk {

/// Map from torus vertex index to a non-negative position (e.g. the index
/// of the vertex along a self-avoiding path).
///
/// Small tori use a dense table; large ones an open-addressed table with
/// linear probing and backward-shift deletion, so insert/erase/find are
/// O(1) amortized without tombstones.
class SiteIndexMap {
 public:
  static constexpr std::int32_t kAbsent = -1;

  explicit SiteIndexMap(std::uint64_t volume, std::uint64_t dense_limit = std::uint64_t{1} << 24);

  std::int32_t find(std::uint64_t key) const noexcept {
    if (dense_) return table_[key];
    std::uint64_t slot = hash(key);
    for (;;) {
      const Entry& e = slots_[slot];
      if (e.value == kAbsent) return kAbsent;
      if (e.key == key) return e.value;
      slot = (slot + 1) & mask_;
    }
  }
  bool contains(std::uint64_t key) const noexcept { return find(key) != kAbsent; }

  /// Inserts or overwrites.
  void insert(std::uint64_t key, std::int32_t value);
  void erase(std::uint64_t key) noexcept;
  /// Removes every key in `keys` (cheaper than a full reset for dense maps).
  template <class Range>
  void erase_all(const Range& keys) noexcept {
    for (auto k : keys) erase(k);
  }

  std::size_t size() const noexcept { return size_; }
  bool dense() const noexcept { return dense_; }

 private:
  struct Entry {
    std::uint64_t key = 0;
    std::int32_t value = kAbsent;
  };

  std::uint64_t hash(std::uint64_t key) const noexcept {
    return (key * 0x9E3779B97F4A7C15ull) >> shift_;
  }
  void grow();

  bool dense_;
  std::vector<std::int32_t> table_;
  std::vector<Entry> slots_;
  std::uint64_t mask_ = 0;
  int shift_ = 64;
  std::size_t size_ = 0;
};

}  // namespace uwalk
