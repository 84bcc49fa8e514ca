#include "fpgmm/matrix.hpp"

#include <string>

#include "fpgmm/kernels.hpp"

namespace fpgmm {

namespace {

std::string shape(const BlockMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_field(const BlockMatrix& a, const BlockMatrix& b) {
  if (!(a.modulus() == b.modulus())) {
    throw ModulusMismatch("matrices over GF(" + std::to_string(a.modulus().value()) +
                          ") and GF(" + std::to_string(b.modulus().value()) + ")");
  }
}

}  // namespace

BlockMatrix::BlockMatrix(Modulus q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

BlockMatrix BlockMatrix::from_entries(Modulus q, std::size_t rows,
                                      std::size_t cols,
                                      std::vector<u64> entries) {
  if (entries.size() != rows * cols) {
    throw DimensionMismatch("expected " + std::to_string(rows * cols) +
                            " entries, got " + std::to_string(entries.size()));
  }
  for (u64 v : entries) {
    if (v >= q.value()) {
      throw Error("matrix entry " + std::to_string(v) + " not reduced mod " +
                  std::to_string(q.value()));
    }
  }
  BlockMatrix m(q, 0, 0);
  m.rows_ = rows;
  m.cols_ = cols;
  m.entries_ = std::move(entries);
  return m;
}

BlockMatrix BlockMatrix::identity(Modulus q, std::size_t n) {
  BlockMatrix m(q, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1 % q.value();
  return m;
}

BlockMatrix BlockMatrix::random(Modulus q, std::size_t rows, std::size_t cols,
                                Rng& rng) {
  BlockMatrix m(q, rows, cols);
  for (u64& v : m.entries_) v = uniform_residue(q.value(), rng);
  return m;
}

BlockMatrix matmul(const BlockMatrix& a, const BlockMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul " + shape(a) + " by " + shape(b));
  }
  BlockMatrix c(a.modulus(), a.rows(), b.cols());
  const u64 q = a.modulus().value();
  kernels::select_kernels(q).matmul(a.entries().data(), b.entries().data(),
                                    c.mutable_entries().data(), a.rows(),
                                    a.cols(), b.cols(), q);
  return c;
}

BlockMatrix add(const BlockMatrix& a, const BlockMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("add " + shape(a) + " and " + shape(b));
  }
  BlockMatrix c(a.modulus(), a.rows(), a.cols());
  auto out = c.mutable_entries();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.modulus().add(a.entries()[i], b.entries()[i]);
  }
  return c;
}

BlockMatrix scale(const BlockMatrix& a, u64 factor) {
  const Modulus q = a.modulus();
  factor = q.reduce(factor);
  BlockMatrix c(q, a.rows(), a.cols());
  auto out = c.mutable_entries();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = q.mul(a.entries()[i], factor);
  return c;
}

BlockMatrix linear_combination(std::span<const BlockMatrix* const> terms,
                               std::span<const u64> coeffs) {
  if (terms.empty()) throw DimensionMismatch("linear combination of no terms");
  if (terms.size() != coeffs.size()) {
    throw DimensionMismatch("linear combination: " + std::to_string(terms.size()) +
                            " terms but " + std::to_string(coeffs.size()) +
                            " coefficients");
  }
  const BlockMatrix& first = *terms.front();
  std::vector<const u64*> inputs;
  inputs.reserve(terms.size());
  for (const BlockMatrix* t : terms) {
    require_same_field(first, *t);
    if (t->rows() != first.rows() || t->cols() != first.cols()) {
      throw DimensionMismatch("linear combination of " + shape(first) + " and " +
                              shape(*t));
    }
    inputs.push_back(t->entries().data());
  }
  const Modulus q = first.modulus();
  std::vector<u64> reduced(coeffs.begin(), coeffs.end());
  for (u64& c : reduced) c = q.reduce(c);

  BlockMatrix out(q, first.rows(), first.cols());
  kernels::select_kernels(q.value())
      .lincomb(out.mutable_entries().data(), reduced.data(), inputs.data(),
               inputs.size(), out.size(), q.value());
  return out;
}

std::vector<BlockMatrix> partition_rows(const BlockMatrix& mat, std::size_t m) {
  if (m == 0 || mat.rows() % m != 0) {
    throw DimensionMismatch("cannot split " + std::to_string(mat.rows()) +
                            " rows into " + std::to_string(m) + " equal bands");
  }
  const std::size_t band = mat.rows() / m;
  const std::size_t stride = band * mat.cols();
  std::vector<BlockMatrix> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto src = mat.entries().subspan(i * stride, stride);
    out.push_back(BlockMatrix::from_entries(mat.modulus(), band, mat.cols(),
                                            {src.begin(), src.end()}));
  }
  return out;
}

std::vector<BlockMatrix> partition_cols(const BlockMatrix& mat, std::size_t n) {
  if (n == 0 || mat.cols() % n != 0) {
    throw DimensionMismatch("cannot split " + std::to_string(mat.cols()) +
                            " columns into " + std::to_string(n) + " equal bands");
  }
  const std::size_t band = mat.cols() / n;
  std::vector<BlockMatrix> out;
  out.reserve(n);
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<u64> entries;
    entries.reserve(mat.rows() * band);
    for (std::size_t r = 0; r < mat.rows(); ++r) {
      auto row = mat.row(r).subspan(b * band, band);
      entries.insert(entries.end(), row.begin(), row.end());
    }
    out.push_back(BlockMatrix::from_entries(mat.modulus(), mat.rows(), band,
                                            std::move(entries)));
  }
  return out;
}

BlockMatrix assemble_grid(const std::vector<std::vector<BlockMatrix>>& blocks) {
  if (blocks.empty() || blocks.front().empty()) {
    throw DimensionMismatch("empty block grid");
  }
  const std::size_t grid_cols = blocks.front().size();
  const BlockMatrix& anchor = blocks.front().front();
  const std::size_t br = anchor.rows();
  const std::size_t bc = anchor.cols();
  for (const auto& row : blocks) {
    if (row.size() != grid_cols) throw DimensionMismatch("ragged block grid");
    for (const BlockMatrix& blk : row) {
      require_same_field(anchor, blk);
      if (blk.rows() != br || blk.cols() != bc) {
        throw DimensionMismatch("block grid mixes " + shape(anchor) + " and " +
                                shape(blk));
      }
    }
  }
  BlockMatrix out(anchor.modulus(), br * blocks.size(), bc * grid_cols);
  auto dst = out.mutable_entries();
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    for (std::size_t b = 0; b < grid_cols; ++b) {
      const BlockMatrix& blk = blocks[a][b];
      for (std::size_t r = 0; r < br; ++r) {
        auto src = blk.row(r);
        std::copy(src.begin(), src.end(),
                  dst.begin() + (a * br + r) * out.cols() + b * bc);
      }
    }
  }
  return out;
}

BlockMatrix hconcat(std::span<const BlockMatrix> blocks) {
  return assemble_grid({std::vector<BlockMatrix>(blocks.begin(), blocks.end())});
}

BlockMatrix vconcat(std::span<const BlockMatrix> blocks) {
  std::vector<std::vector<BlockMatrix>> grid;
  grid.reserve(blocks.size());
  for (const BlockMatrix& b : blocks) grid.push_back({b});
  return assemble_grid(grid);
}

}  // namespace fpgmm
