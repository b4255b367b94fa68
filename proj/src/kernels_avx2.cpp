// Compiled with -mavx2 when the toolchain targets x86-64; never called unless
// the CPU reports AVX2 at runtime.
#include "gf2sym/kernels.hpp"
#include "kernels_rows.hpp"

#if defined(GF2SYM_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

namespace gf2sym::kernels {
namespace {

void xor_into_avx2(Word* dst, const Word* src, std::size_t words) {
  std::size_t k = 0;
  for (; k + 4 <= words; k += 4) {
    auto d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
    auto s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), _mm256_xor_si256(d, s));
  }
  for (; k < words; ++k) dst[k] ^= src[k];
}

bool and_parity_avx2(const Word* a, const Word* b, std::size_t words) {
  std::size_t k = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; k + 4 <= words; k += 4) {
    auto x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
    auto y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
    acc = _mm256_xor_si256(acc, _mm256_and_si256(x, y));
  }
  Word tail = 0;
  for (; k < words; ++k) tail ^= a[k] & b[k];
  alignas(32) Word lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  tail ^= lanes[0] ^ lanes[1] ^ lanes[2] ^ lanes[3];
  return (std::popcount(tail) & 1) != 0;
}

bool is_zero_avx2(const Word* a, std::size_t words) {
  std::size_t k = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; k + 4 <= words; k += 4) {
    acc = _mm256_or_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k)));
  }
  Word tail = 0;
  for (; k < words; ++k) tail |= a[k];
  return tail == 0 && _mm256_testz_si256(acc, acc) != 0;
}

Word horizontal_xor(__m256i acc) {
  const __m128i h = _mm_xor_si128(_mm256_castsi256_si128(acc), _mm256_extracti128_si256(acc, 1));
  return static_cast<Word>(_mm_cvtsi128_si64(h)) ^ static_cast<Word>(_mm_extract_epi64(h, 1));
}

void column_move_rows_avx2(Word* rows, std::size_t nrows, std::size_t stride, std::size_t words, const Word* v,
                           const Word* vr, std::size_t i, std::size_t ib, bool c) {
  const std::size_t iw = i / 64, ibw = ib / 64, ishift = i % 64, ibshift = ib % 64;
  const Word cw = c ? 1 : 0;
  for (std::size_t r = 0; r < nrows; ++r) {
    Word* y = rows + r * stride;
    const Word yi = (y[iw] >> ishift) & 1;
    const __m256i mask = _mm256_set1_epi64x(-static_cast<long long>(yi));
    __m256i acc = _mm256_setzero_si256();
    std::size_t k = 0;
    for (; k + 4 <= words; k += 4) {
      auto x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + k));
      acc = _mm256_xor_si256(acc, _mm256_and_si256(x, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(vr + k))));
      x = _mm256_xor_si256(x, _mm256_and_si256(mask, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + k))));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + k), x);
    }
    Word tail = horizontal_xor(acc);
    const Word wmask = Word{0} - yi;
    for (; k < words; ++k) {
      tail ^= y[k] & vr[k];
      y[k] ^= v[k] & wmask;
    }
    const Word flip = (static_cast<Word>(std::popcount(tail)) ^ (yi & cw)) & 1;
    y[ibw] ^= flip << ibshift;
  }
}

void gather_xor_avx2(Word* dst, const Word* rows, std::size_t stride, std::size_t words, const Word* sel,
                     std::size_t nsel, bool mirror) {
  detail::gather_with([](Word* d, const Word* r, std::size_t w) { xor_into_avx2(d, r, w); }, dst, rows, stride, words, sel, nsel, mirror);
}

void scatter_xor_avx2(Word* rows, std::size_t stride, std::size_t words, const Word* sel, std::size_t nsel, bool mirror,
                      const Word* src, std::size_t skip) {
  detail::scatter_with([](Word* d, const Word* r, std::size_t w) { xor_into_avx2(d, r, w); }, rows, stride, words, sel, nsel, mirror, src, skip);
}

constexpr KernelTable kAvx2{"avx2", &xor_into_avx2, &and_parity_avx2, &is_zero_avx2, &column_move_rows_avx2,
                              &gather_xor_avx2, &scatter_xor_avx2};

}  // namespace

const KernelTable* avx2_table_unchecked() { return &kAvx2; }

}  // namespace gf2sym::kernels

#else

namespace gf2sym::kernels {
const KernelTable* avx2_table_unchecked() { return nullptr; }
}  // namespace gf2sym::kernels

#endif
