#include <atomic>
#include <cstdlib>
#include <string>

#include "nhprobe/linalg/kernels.hpp"

namespace nhprobe::linalg::kernels {

#if defined(NHPROBE_HAVE_AVX2)
const KernelTable& avx2_table_impl();
#endif
#if defined(NHPROBE_HAVE_NEON)
const KernelTable& neon_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(NHPROBE_HAVE_AVX2)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(NHPROBE_HAVE_NEON)
  return &neon_table_impl();
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (const auto* t = avx2_table()) out.push_back(t);
  if (const auto* t = neon_table()) out.push_back(t);
  return out;
}

namespace {

const KernelTable* lookup(std::string_view name) {
  for (const auto* t : available_tables()) {
    if (name == t->name) return t;
  }
  return nullptr;
}

const KernelTable* initial_selection() {
  if (const char* env = std::getenv("NHPROBE_KERNELS")) {
    if (const auto* t = lookup(env)) return t;
  }
  return available_tables().back();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_selection()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const auto* t = lookup(name);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace nhprobe::linalg::kernels
