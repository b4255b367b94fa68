#include "gf2sym/kernels.hpp"
#include "kernels_rows.hpp"

#include <bit>

namespace gf2sym::kernels {
namespace {

void xor_into_scalar(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t k = 0; k < words; ++k) dst[k] ^= src[k];
}

bool and_parity_scalar(const Word* a, const Word* b, std::size_t words) {
  Word acc = 0;
  for (std::size_t k = 0; k < words; ++k) acc ^= a[k] & b[k];
  return (std::popcount(acc) & 1) != 0;
}

bool is_zero_scalar(const Word* a, std::size_t words) {
  Word acc = 0;
  for (std::size_t k = 0; k < words; ++k) acc |= a[k];
  return acc == 0;
}

void column_move_rows_scalar(Word* rows, std::size_t nrows, std::size_t stride, std::size_t words, const Word* v,
                             const Word* vr, std::size_t i, std::size_t ib, bool c) {
  const std::size_t iw = i / 64, ibw = ib / 64, ishift = i % 64, ibshift = ib % 64;
  const Word cw = c ? 1 : 0;
  for (std::size_t r = 0; r < nrows; ++r) {
    Word* y = rows + r * stride;
    const Word yi = (y[iw] >> ishift) & 1;
    const Word mask = Word{0} - yi;
    Word acc = 0;
    for (std::size_t k = 0; k < words; ++k) {
      acc ^= y[k] & vr[k];
      y[k] ^= v[k] & mask;
    }
    const Word flip = (static_cast<Word>(std::popcount(acc)) ^ (yi & cw)) & 1;
    y[ibw] ^= flip << ibshift;
  }
}

void gather_xor_scalar(Word* dst, const Word* rows, std::size_t stride, std::size_t words, const Word* sel,
                     std::size_t nsel, bool mirror) {
  detail::gather_with([](Word* d, const Word* r, std::size_t w) { xor_into_scalar(d, r, w); }, dst, rows, stride, words, sel, nsel, mirror);
}

void scatter_xor_scalar(Word* rows, std::size_t stride, std::size_t words, const Word* sel, std::size_t nsel, bool mirror,
                      const Word* src, std::size_t skip) {
  detail::scatter_with([](Word* d, const Word* r, std::size_t w) { xor_into_scalar(d, r, w); }, rows, stride, words, sel, nsel, mirror, src, skip);
}

constexpr KernelTable kScalar{"scalar", &xor_into_scalar, &and_parity_scalar, &is_zero_scalar,
                              &column_move_rows_scalar,
                              &gather_xor_scalar, &scatter_xor_scalar};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace gf2sym::kernels
