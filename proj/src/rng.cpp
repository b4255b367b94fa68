#include "gf2sym/rng.hpp"

namespace gf2sym {

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
}  // namespace

Philox::Block Philox::encrypt(Block ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    Block next{static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    ctr = next;
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

void Philox::refill() {
  Block ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  Key key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  buffer_ = encrypt(ctr, key);
  ++block_;
  used_ = 0;
}

Philox::result_type Philox::operator()() {
  if (used_ + 2 > 4) refill();
  std::uint64_t lo = buffer_[used_];
  std::uint64_t hi = buffer_[used_ + 1];
  used_ += 2;
  return lo | (hi << 32);
}

bool Philox::next_bit() {
  if (bits_left_ == 0) {
    bits_ = (*this)();
    bits_left_ = 64;
  }
  bool b = bits_ & 1U;
  bits_ >>= 1;
  --bits_left_;
  return b;
}

std::uint64_t Philox::uniform_below(std::uint64_t bound) {
  // Reject the top partial block of width 2^64 mod bound.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t x = (*this)();
    if (x >= threshold) return x % bound;
  }
}

double Philox::uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

}  // namespace gf2sym
