#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fpgmm/field.hpp"

namespace fpgmm {

/// Dense row-major matrix over GF(q).
class BlockMatrix {
 public:
  BlockMatrix(Modulus q, std::size_t rows, std::size_t cols);

  /// Takes ownership of `entries` (row-major). Values must already be < q.
  static BlockMatrix from_entries(Modulus q, std::size_t rows,
                                  std::size_t cols, std::vector<u64> entries);
  static BlockMatrix identity(Modulus q, std::size_t n);
  static BlockMatrix random(Modulus q, std::size_t rows, std::size_t cols,
                            Rng& rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  Modulus modulus() const { return q_; }

  u64 at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, u64 v) {
    entries_[r * cols_ + c] = q_.reduce(v);
  }
  FieldElement element(std::size_t r, std::size_t c) const {
    return FieldElement(q_, at(r, c));
  }

  std::span<const u64> entries() const { return entries_; }
  std::span<u64> mutable_entries() { return entries_; }
  std::span<const u64> row(std::size_t r) const {
    return std::span<const u64>(entries_).subspan(r * cols_, cols_);
  }

  friend bool operator==(const BlockMatrix& a, const BlockMatrix& b) {
    return a.q_ == b.q_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }

 private:
  Modulus q_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<u64> entries_;
};

BlockMatrix matmul(const BlockMatrix& a, const BlockMatrix& b);
BlockMatrix add(const BlockMatrix& a, const BlockMatrix& b);
BlockMatrix scale(const BlockMatrix& a, u64 factor);

/// sum_i coeffs[i] * terms[i]; all terms share one shape.
BlockMatrix linear_combination(std::span<const BlockMatrix* const> terms,
                               std::span<const u64> coeffs);

/// Row bands [i*rows/m, (i+1)*rows/m). Throws DimensionMismatch if m does not
/// divide rows.
std::vector<BlockMatrix> partition_rows(const BlockMatrix& mat, std::size_t m);
std::vector<BlockMatrix> partition_cols(const BlockMatrix& mat, std::size_t n);

/// Block (a, b) of the grid lands in row band a, column band b.
BlockMatrix assemble_grid(const std::vector<std::vector<BlockMatrix>>& blocks);

BlockMatrix hconcat(std::span<const BlockMatrix> blocks);
BlockMatrix vconcat(std::span<const BlockMatrix> blocks);

}  // namespace fpgmm
