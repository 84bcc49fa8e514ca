#include <atomic>
#include <cstdlib>
#include <string>

#include "fpgmm/kernels.hpp"

namespace fpgmm::kernels {

#if defined(FPGMM_HAVE_AVX2)
const KernelSet& avx2_kernel_table();
#endif

namespace {

// -1: automatic, otherwise static_cast<int>(Isa).
int initial_override() {
  const char* env = std::getenv("FPGMM_KERNEL");
  if (env == nullptr) return -1;
  std::string v(env);
  if (v == "scalar") return static_cast<int>(Isa::scalar);
  if (v == "avx2") return static_cast<int>(Isa::avx2);
  return -1;
}

std::atomic<int>& override_slot() {
  static std::atomic<int> slot{initial_override()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
#else
  return false;
#endif
}

const KernelSet* avx2_kernels() {
#if defined(FPGMM_HAVE_AVX2)
  if (cpu_supports_avx2()) return &avx2_kernel_table();
#endif
  return nullptr;
}

void force_isa(std::optional<Isa> isa) {
  override_slot().store(isa ? static_cast<int>(*isa) : -1);
}

std::optional<Isa> forced_isa() {
  int v = override_slot().load();
  if (v < 0) return std::nullopt;
  return static_cast<Isa>(v);
}

const KernelSet& select_kernels(u64 q) {
  auto forced = forced_isa();
  if (forced && *forced == Isa::scalar) return scalar_kernels();
  if (const KernelSet* simd = avx2_kernels(); simd && simd->handles(q)) {
    return *simd;
  }
  return scalar_kernels();
}

}  // namespace fpgmm::kernels
