#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include <boost/rational.hpp>

namespace fpgmm {

using Ratio = boost::rational<std::int64_t>;

double to_double(const Ratio& r);

/// Closed-form metrics of the grouped scheme.
struct FpgmmCost {
  std::int64_t m, n, r, T, s_size;
  std::int64_t R;  // ((r+1)/r)|S|mn + 2T - 1
  Ratio D;         // R / (|S|mn)
  Ratio C;         // r / (|S|mn)
};

/// Closed-form metrics of the multi-round single-product baseline.
struct MrFpmmCost {
  std::int64_t m, n, p, T, s_size;
  std::int64_t R;  // min of the three branch thresholds
  Ratio D;         // R / (mn)
  Ratio C;         // 1 / (mnp)
};

/// Throws Error unless all arguments are positive and r divides m*n.
FpgmmCost fpgmm_metrics(std::int64_t m, std::int64_t n, std::int64_t r,
                        std::int64_t T, std::int64_t s_size);

MrFpmmCost mrfpmm_metrics(std::int64_t m, std::int64_t n, std::int64_t p,
                          std::int64_t T, std::int64_t s_size);

enum class Scheme { fpgmm, mrfpmm };
std::string_view scheme_name(Scheme s);

struct SearchLimits {
  std::int64_t max_m = 64;
  std::int64_t max_n = 64;
  std::int64_t max_p = 64;  // baseline only; the grouped scheme uses r | mn
};

struct TradeoffPoint {
  Scheme scheme;
  double ncc_bound;
  std::int64_t worker_cap;
  std::int64_t T;
  std::int64_t s_size;
  bool feasible = false;
  // Meaningful only when feasible.
  std::int64_t m = 0, n = 0, r_or_p = 0;
  std::int64_t R = 0;
  Ratio ndc{0};
  Ratio ncc{0};
};

/// Exhaustive search minimising NDC subject to NCC <= ncc_bound and
/// R <= worker_cap. Ties go to the smaller R, then lexicographically smaller
/// (m, n, r_or_p).
TradeoffPoint optimize_tradeoff(Scheme scheme, double ncc_bound,
                                std::int64_t worker_cap, std::int64_t T,
                                std::int64_t s_size,
                                const SearchLimits& limits = {});

/// NCC comparison against a floating bound without rounding the ratio.
bool ncc_within(const Ratio& ncc, double bound);

}  // namespace fpgmm
