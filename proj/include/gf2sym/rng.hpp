#pragma once

#include <array>
#include <cstdint>

namespace gf2sym {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Output is a pure function of (seed, stream, position): streams with
/// different indices never overlap, so parallel work gets `split(i)`.
class Philox {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  /// Raw 10-round bijection, exposed for known-answer tests.
  static Block encrypt(Block counter, Key key);

  result_type operator()();
  result_type next_u64() { return (*this)(); }
  bool next_bit();
  /// Uniform in [0, bound), bound > 0, by rejection (no modulo bias).
  std::uint64_t uniform_below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  Philox split(std::uint64_t stream) const { return Philox(seed_, stream); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  unsigned used_ = 4;  // 32-bit lanes consumed from buffer_
  std::uint64_t bits_ = 0;
  unsigned bits_left_ = 0;
};

}  // namespace gf2sym
