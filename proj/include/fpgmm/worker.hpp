#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpgmm/encoder.hpp"
#include "fpgmm/matrix.hpp"

namespace fpgmm {

struct EncodedLibraries {
  std::vector<BlockMatrix> a_hat;  // r matrices, (alpha/m) x alpha
  std::vector<BlockMatrix> b_hat;  // r matrices, alpha x (alpha/n)
};

struct WorkerOutput {
  std::size_t worker = 0;  // 0-based
  BlockMatrix U;           // (alpha/m) x (alpha/n)
  std::uint64_t mul_count = 0;
};

/// Re-indexed sub-matrices: entry i is row band (i mod m) of A_{i / m}.
std::vector<BlockMatrix> split_library_a(std::span<const BlockMatrix> lib_a,
                                         std::size_t m);
/// Entry j is column band (j mod n) of B_{j / n}.
std::vector<BlockMatrix> split_library_b(std::span<const BlockMatrix> lib_b,
                                         std::size_t n);

EncodedLibraries encode_libraries(std::span<const BlockMatrix> lib_a,
                                  std::span<const BlockMatrix> lib_b,
                                  const Query& query);

/// U = sum_k A_hat_k * B_hat_k. mul_count counts the field multiplications
/// of that product-sum only.
WorkerOutput respond(std::span<const BlockMatrix> lib_a,
                     std::span<const BlockMatrix> lib_b, const Query& query);

}  // namespace fpgmm
