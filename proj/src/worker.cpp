#include "fpgmm/worker.hpp"

#include <string>

namespace fpgmm {

namespace {

std::size_t common_side(std::span<const BlockMatrix> lib_a,
                        std::span<const BlockMatrix> lib_b) {
  if (lib_a.empty() || lib_b.empty()) throw DimensionMismatch("empty library");
  const std::size_t alpha = lib_a.front().rows();
  auto check = [&](const BlockMatrix& mat) {
    if (mat.rows() != alpha || mat.cols() != alpha) {
      throw DimensionMismatch("library matrices must all be " + std::to_string(alpha) +
                              "x" + std::to_string(alpha));
    }
  };
  for (const auto& a : lib_a) check(a);
  for (const auto& b : lib_b) check(b);
  return alpha;
}

}  // namespace

std::vector<BlockMatrix> split_library_a(std::span<const BlockMatrix> lib_a,
                                         std::size_t m) {
  std::vector<BlockMatrix> out;
  out.reserve(lib_a.size() * m);
  for (const BlockMatrix& a : lib_a) {
    for (auto& band : partition_rows(a, m)) out.push_back(std::move(band));
  }
  return out;
}

std::vector<BlockMatrix> split_library_b(std::span<const BlockMatrix> lib_b,
                                         std::size_t n) {
  std::vector<BlockMatrix> out;
  out.reserve(lib_b.size() * n);
  for (const BlockMatrix& b : lib_b) {
    for (auto& band : partition_cols(b, n)) out.push_back(std::move(band));
  }
  return out;
}

EncodedLibraries encode_libraries(std::span<const BlockMatrix> lib_a,
                                  std::span<const BlockMatrix> lib_b,
                                  const Query& query) {
  const std::size_t alpha = common_side(lib_a, lib_b);
  if (query.m == 0 || query.n == 0 || alpha % query.m != 0 || alpha % query.n != 0) {
    throw DimensionMismatch("query partition (m=" + std::to_string(query.m) +
                            ", n=" + std::to_string(query.n) +
                            ") does not divide alpha=" + std::to_string(alpha));
  }
  if (lib_a.size() * query.m != query.rows_a || lib_b.size() * query.n != query.rows_b ||
      query.a_evals.size() != query.rows_a * query.r ||
      query.b_evals.size() != query.rows_b * query.r) {
    throw DimensionMismatch("query evaluation counts do not match the libraries");
  }

  const auto tilde_a = split_library_a(lib_a, query.m);
  const auto tilde_b = split_library_b(lib_b, query.n);
  std::vector<const BlockMatrix*> terms_a, terms_b;
  for (const auto& t : tilde_a) terms_a.push_back(&t);
  for (const auto& t : tilde_b) terms_b.push_back(&t);

  EncodedLibraries enc;
  enc.a_hat.reserve(query.r);
  enc.b_hat.reserve(query.r);
  std::vector<u64> coeffs;
  for (std::size_t k = 0; k < query.r; ++k) {
    coeffs.clear();
    for (std::size_t i = 0; i < query.rows_a; ++i) coeffs.push_back(query.a_eval(i, k));
    enc.a_hat.push_back(linear_combination(terms_a, coeffs));
    coeffs.clear();
    for (std::size_t j = 0; j < query.rows_b; ++j) coeffs.push_back(query.b_eval(j, k));
    enc.b_hat.push_back(linear_combination(terms_b, coeffs));
  }
  return enc;
}

WorkerOutput respond(std::span<const BlockMatrix> lib_a,
                     std::span<const BlockMatrix> lib_b, const Query& query) {
  const EncodedLibraries enc = encode_libraries(lib_a, lib_b, query);
  // [A_1 ... A_r] * [B_1; ...; B_r] is the product-sum in a single kernel call.
  const BlockMatrix left = hconcat(enc.a_hat);
  const BlockMatrix right = vconcat(enc.b_hat);
  WorkerOutput out{query.worker, matmul(left, right), 0};
  out.mul_count = static_cast<std::uint64_t>(left.rows()) * left.cols() * right.cols();
  return out;
}

}  // namespace fpgmm
