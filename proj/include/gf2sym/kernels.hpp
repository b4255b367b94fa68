#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Word-parallel inner loops shared by every bit-packed routine in the library.
// A scalar reference table is always present; SIMD tables are compiled in when
// the target supports them and chosen at runtime by CPU feature detection.
namespace gf2sym::kernels {

using Word = std::uint64_t;

struct KernelTable {
  std::string_view name;
  /// dst[k] ^= src[k] for k < words.
  void (*xor_into)(Word* dst, const Word* src, std::size_t words);
  /// Parity of popcount(a & b).
  bool (*and_parity)(const Word* a, const Word* b, std::size_t words);
  bool (*is_zero)(const Word* a, std::size_t words);
  /// Right multiplication by a transposed whole-column move, fused over all
  /// rows: for each row y (of `words` words, `stride` apart), with p the
  /// parity of y & vr taken before the update, y ^= v when bit i of y is set,
  /// then bit ib flips when p != (y_i && c).
  void (*column_move_rows)(Word* rows, std::size_t nrows, std::size_t stride, std::size_t words, const Word* v,
                           const Word* vr, std::size_t i, std::size_t ib, bool c);
  /// dst ^= row(map(j)) for every set bit j of sel (nsel bits), ascending j;
  /// map(j) = nsel-1-j when mirror, else j.
  void (*gather_xor)(Word* dst, const Word* rows, std::size_t stride, std::size_t words, const Word* sel,
                     std::size_t nsel, bool mirror);
  /// row(map(j)) ^= src for every set bit j of sel with map(j) != skip,
  /// ascending j, with map as in gather_xor. src may be one of the rows.
  void (*scatter_xor)(Word* rows, std::size_t stride, std::size_t words, const Word* sel, std::size_t nsel,
                      bool mirror, const Word* src, std::size_t skip);
};

const KernelTable& scalar();

/// nullptr when the build has no AVX2 variant or the CPU lacks AVX2.
const KernelTable* avx2();

/// Table used by the library. Chosen once: AVX2 when available, unless the
/// environment variable GF2SYM_KERNELS=scalar is set.
const KernelTable& active();

/// Overrides the active table (benchmarks and equivalence tests).
void set_active(const KernelTable& table);

inline void xor_into(Word* dst, const Word* src, std::size_t words) { active().xor_into(dst, src, words); }
inline bool and_parity(const Word* a, const Word* b, std::size_t words) { return active().and_parity(a, b, words); }
inline bool is_zero(const Word* a, std::size_t words) { return active().is_zero(a, words); }

}  // namespace gf2sym::kernels
