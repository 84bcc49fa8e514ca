#pragma once

// Modular arithmetic inner loops with a scalar reference implementation and
// SIMD variants picked at runtime. Every variant must be bit-identical to the
// scalar reference on fully reduced inputs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace fpgmm::kernels {

using u64 = std::uint64_t;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

struct KernelSet {
  Isa isa;
  /// Largest modulus (exclusive) the variant handles; 0 means any q < 2^64.
  u64 max_modulus;

  /// c[rows x cols] = a[rows x inner] * b[inner x cols] mod q, row-major.
  void (*matmul)(const u64* a, const u64* b, u64* c, std::size_t rows,
                 std::size_t inner, std::size_t cols, u64 q);

  /// out[len] = sum_i coeffs[i] * inputs[i][0..len) mod q.
  void (*lincomb)(u64* out, const u64* coeffs, const u64* const* inputs,
                  std::size_t count, std::size_t len, u64 q);

  bool handles(u64 q) const { return max_modulus == 0 || q < max_modulus; }
};

const KernelSet& scalar_kernels();

/// AVX2 variant, or nullptr when not compiled in or the CPU lacks AVX2.
const KernelSet* avx2_kernels();

bool cpu_supports_avx2();

/// Fastest variant able to handle modulus q, honouring any forced ISA.
/// The FPGMM_KERNEL environment variable ("scalar" or "avx2") seeds the
/// initial override.
const KernelSet& select_kernels(u64 q);

/// Force a variant (nullopt restores automatic selection). A forced ISA that
/// is unavailable or cannot handle q falls back to scalar.
void force_isa(std::optional<Isa> isa);
std::optional<Isa> forced_isa();

}  // namespace fpgmm::kernels
