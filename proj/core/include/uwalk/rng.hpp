#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace uwalk {

/// Philox4x32-10 counter-based generator.
///
/// A stream is identified by (seed, stream id): the seed forms the key and
/// the stream id occupies the upper half of the 128-bit counter, so streams
/// with different ids never share a counter block. Output is a fixed
/// function of (seed, stream, draw index) on every platform.
class Philox4x32 {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (pos_ >= 4) refill();
    const std::uint64_t lo = out_[pos_];
    const std::uint64_t hi = out_[pos_ + 1];
    pos_ += 2;
    return (hi << 32) | lo;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t n) noexcept;

  /// The raw bijection on one counter block.
  static Block bijection(Block ctr, Key key) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  Key key_;
  std::uint64_t counter_ = 0;
  Block out_{};
  unsigned pos_ = 4;
};

/// Stream for chain `chain_index` of a run seeded with `global_seed`.
inline Philox4x32 make_stream(std::uint64_t global_seed, std::uint64_t chain_index) noexcept {
  return Philox4x32(global_seed, chain_index);
}

}  // namespace uwalk
