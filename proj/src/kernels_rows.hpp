#pragma once

#include <bit>
#include <cstddef>

#include "gf2sym/kernels.hpp"

// Row selection loops shared by the kernel tables; the per-row xor is passed
// in so each table inlines its own.
namespace gf2sym::kernels::detail {

template <class X>
void gather_with(X xr, Word* dst, const Word* rows, std::size_t stride, std::size_t words, const Word* sel,
                 std::size_t nsel, bool mirror) {
  const std::size_t nw = (nsel + 63) / 64;
  for (std::size_t w = 0; w < nw; ++w) {
    for (Word x = sel[w]; x != 0; x &= x - 1) {
      const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
      xr(dst, rows + (mirror ? nsel - 1 - j : j) * stride, words);
    }
  }
}

template <class X>
void scatter_with(X xr, Word* rows, std::size_t stride, std::size_t words, const Word* sel, std::size_t nsel,
                  bool mirror, const Word* src, std::size_t skip) {
  const std::size_t nw = (nsel + 63) / 64;
  for (std::size_t w = 0; w < nw; ++w) {
    for (Word x = sel[w]; x != 0; x &= x - 1) {
      const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
      const std::size_t t = mirror ? nsel - 1 - j : j;
      if (t != skip) xr(rows + t * stride, src, words);
    }
  }
}

}  // namespace gf2sym::kernels::detail
