#pragma once

// Test-side reference computations. Deliberately naive and independent of the
// library's kernels, solvers and encoders.

#include <cstdint>
#include <vector>

#include "fpgmm/matrix.hpp"

namespace oracle {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 q) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % q);
}

inline u64 powmod(u64 b, u64 e, u64 q) {
  u64 r = 1 % q;
  b %= q;
  while (e) {
    if (e & 1) r = mulmod(r, b, q);
    b = mulmod(b, b, q);
    e >>= 1;
  }
  return r;
}

// Fermat inverse; only valid for prime q and a != 0.
inline u64 invmod(u64 a, u64 q) { return powmod(a, q - 2, q); }

// Brute force over residues, for tiny q.
inline u64 brute_inverse(u64 a, u64 q) {
  for (u64 x = 1; x < q; ++x) {
    if (a * x % q == 1) return x;
  }
  return 0;
}

inline std::vector<u64> matmul(const std::vector<u64>& a, const std::vector<u64>& b,
                               std::size_t rows, std::size_t inner, std::size_t cols, u64 q) {
  std::vector<u64> c(rows * cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t k = 0; k < inner; ++k) {
        acc += static_cast<unsigned __int128>(a[i * inner + k]) * b[k * cols + j];
        acc %= q;
      }
      c[i * cols + j] = static_cast<u64>(acc);
    }
  }
  return c;
}

inline fpgmm::BlockMatrix matmul(const fpgmm::BlockMatrix& a, const fpgmm::BlockMatrix& b) {
  const u64 q = a.modulus().value();
  std::vector<u64> ea(a.entries().begin(), a.entries().end());
  std::vector<u64> eb(b.entries().begin(), b.entries().end());
  return fpgmm::BlockMatrix::from_entries(a.modulus(), a.rows(), b.cols(),
                                          matmul(ea, eb, a.rows(), a.cols(), b.cols(), q));
}

// Coefficients (low to high) of the unique polynomial of degree < xs.size()
// through the points, by Newton divided differences.
inline std::vector<u64> interpolate(const std::vector<u64>& xs, const std::vector<u64>& ys,
                                    u64 q) {
  const std::size_t n = xs.size();
  std::vector<u64> dd = ys;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const u64 num = (dd[i] + q - dd[i - 1]) % q;
      const u64 den = (xs[i] + q - xs[i - level]) % q;
      dd[i] = mulmod(num, invmod(den, q), q);
    }
  }
  // Expand the Newton form into monomial coefficients.
  std::vector<u64> coeffs(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    // coeffs = coeffs * (x - xs[i]) + dd[i]
    std::vector<u64> next(n, 0);
    for (std::size_t d = 0; d < n; ++d) {
      if (coeffs[d] == 0) continue;
      if (d + 1 < n) next[d + 1] = (next[d + 1] + coeffs[d]) % q;
      next[d] = (next[d] + q - mulmod(coeffs[d], xs[i], q)) % q;
    }
    next[0] = (next[0] + dd[i]) % q;
    coeffs = std::move(next);
  }
  return coeffs;
}

inline std::size_t degree(const std::vector<u64>& coeffs) {
  for (std::size_t d = coeffs.size(); d-- > 0;) {
    if (coeffs[d] != 0) return d;
  }
  return 0;
}

}  // namespace oracle
