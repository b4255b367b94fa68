#include <atomic>
#include <cstdlib>
#include <string_view>

#include "gf2sym/kernels.hpp"

namespace gf2sym::kernels {

const KernelTable* avx2_table_unchecked();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* choose() {
  if (const char* forced = std::getenv("GF2SYM_KERNELS"); forced && std::string_view(forced) == "scalar") {
    return &scalar();
  }
  if (auto* t = avx2()) return t;
  return &scalar();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{choose()};
  return current;
}

}  // namespace

const KernelTable* avx2() {
  static const KernelTable* table = cpu_has_avx2() ? avx2_table_unchecked() : nullptr;
  return table;
}

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

void set_active(const KernelTable& table) { slot().store(&table, std::memory_order_relaxed); }

}  // namespace gf2sym::kernels
