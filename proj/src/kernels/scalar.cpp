#include "fpgmm/kernels.hpp"

namespace fpgmm::kernels {

namespace {

inline u64 mul_add_mod(u64 acc, u64 a, u64 b, u64 q) {
  return static_cast<u64>(
      (static_cast<unsigned __int128>(a) * b + acc) % q);
}

void matmul_scalar(const u64* a, const u64* b, u64* c, std::size_t rows,
                   std::size_t inner, std::size_t cols, u64 q) {
  for (std::size_t i = 0; i < rows; ++i) {
    u64* crow = c + i * cols;
    for (std::size_t j = 0; j < cols; ++j) crow[j] = 0;
    for (std::size_t k = 0; k < inner; ++k) {
      const u64 aik = a[i * inner + k];
      if (aik == 0) continue;
      const u64* brow = b + k * cols;
      for (std::size_t j = 0; j < cols; ++j) {
        crow[j] = mul_add_mod(crow[j], aik, brow[j], q);
      }
    }
  }
}

void lincomb_scalar(u64* out, const u64* coeffs, const u64* const* inputs,
                    std::size_t count, std::size_t len, u64 q) {
  for (std::size_t j = 0; j < len; ++j) out[j] = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const u64 c = coeffs[i];
    if (c == 0) continue;
    const u64* x = inputs[i];
    for (std::size_t j = 0; j < len; ++j) out[j] = mul_add_mod(out[j], c, x[j], q);
  }
}

constexpr KernelSet kScalar{Isa::scalar, 0, &matmul_scalar, &lincomb_scalar};

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

}  // namespace fpgmm::kernels
