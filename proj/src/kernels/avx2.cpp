// AVX2 variants. Only valid for q < 2^31: operands then fit the 32-bit lanes
// of _mm256_mul_epu32 and each product is below 2^62.
//
// Accumulators are kept lazily reduced in [0, 2^63). After adding a product
// the sum is below 2^63 + 2^62; when bit 63 is set we subtract the largest
// multiple of q not exceeding 2^63, which restores the bound. A single % q per
// output entry finishes the job.

#include <immintrin.h>

#include "fpgmm/kernels.hpp"

namespace fpgmm::kernels {

namespace {

constexpr u64 kAvx2MaxModulus = u64{1} << 31;

inline u64 fold_constant(u64 q) { return ((u64{1} << 63) / q) * q; }

inline u64 lazy_step(u64 acc, u64 a, u64 b, u64 fold) {
  acc += a * b;
  if (acc >> 63) acc -= fold;
  return acc;
}

// acc[0..len) += a * x[0..len), lazily reduced.
inline void mul_acc_row(u64* acc, u64 a, const u64* x, std::size_t len,
                        u64 fold) {
  const __m256i av = _mm256_set1_epi64x(static_cast<long long>(a));
  const __m256i fv = _mm256_set1_epi64x(static_cast<long long>(fold));
  const __m256i zero = _mm256_setzero_si256();
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + j));
    __m256i cv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + j));
    cv = _mm256_add_epi64(cv, _mm256_mul_epu32(av, xv));
    // Lanes with bit 63 set compare as negative.
    __m256i over = _mm256_cmpgt_epi64(zero, cv);
    cv = _mm256_sub_epi64(cv, _mm256_and_si256(over, fv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + j), cv);
  }
  for (; j < len; ++j) acc[j] = lazy_step(acc[j], a, x[j], fold);
}

void matmul_avx2(const u64* a, const u64* b, u64* c, std::size_t rows,
                 std::size_t inner, std::size_t cols, u64 q) {
  const u64 fold = fold_constant(q);
  for (std::size_t i = 0; i < rows; ++i) {
    u64* crow = c + i * cols;
    for (std::size_t j = 0; j < cols; ++j) crow[j] = 0;
    for (std::size_t k = 0; k < inner; ++k) {
      const u64 aik = a[i * inner + k];
      if (aik == 0) continue;
      mul_acc_row(crow, aik, b + k * cols, cols, fold);
    }
    for (std::size_t j = 0; j < cols; ++j) crow[j] %= q;
  }
}

void lincomb_avx2(u64* out, const u64* coeffs, const u64* const* inputs,
                  std::size_t count, std::size_t len, u64 q) {
  const u64 fold = fold_constant(q);
  for (std::size_t j = 0; j < len; ++j) out[j] = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (coeffs[i] == 0) continue;
    mul_acc_row(out, coeffs[i], inputs[i], len, fold);
  }
  for (std::size_t j = 0; j < len; ++j) out[j] %= q;
}

constexpr KernelSet kAvx2{Isa::avx2, kAvx2MaxModulus, &matmul_avx2,
                          &lincomb_avx2};

}  // namespace

const KernelSet& avx2_kernel_table() { return kAvx2; }

}  // namespace fpgmm::kernels
