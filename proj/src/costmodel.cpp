#include "fpgmm/costmodel.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "fpgmm/errors.hpp"

namespace fpgmm {

double to_double(const Ratio& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

FpgmmCost fpgmm_metrics(std::int64_t m, std::int64_t n, std::int64_t r,
                        std::int64_t T, std::int64_t s_size) {
  if (m <= 0 || n <= 0 || r <= 0 || T <= 0 || s_size <= 0) {
    throw Error("cost model parameters must be positive");
  }
  if ((m * n) % r != 0) {
    throw Error("group count r=" + std::to_string(r) + " does not divide mn=" +
                std::to_string(m * n));
  }
  const std::int64_t blocks = s_size * m * n;
  const std::int64_t delta = blocks / r;
  FpgmmCost c{m, n, r, T, s_size, blocks + delta + 2 * T - 1, Ratio(0), Ratio(0)};
  c.D = Ratio(c.R, blocks);
  c.C = Ratio(r, blocks);
  return c;
}

MrFpmmCost mrfpmm_metrics(std::int64_t m, std::int64_t n, std::int64_t p,
                          std::int64_t T, std::int64_t s_size) {
  if (m <= 0 || n <= 0 || p <= 0 || T <= 0 || s_size <= 0) {
    throw Error("cost model parameters must be positive");
  }
  const std::int64_t r1 = (m + 1) * (n * p + T) - 1;
  const std::int64_t r2 = (n + 1) * (m * p + T) - 1;
  const std::int64_t r3 = 2 * m * n * p + 2 * T - 1;
  MrFpmmCost c{m, n, p, T, s_size, std::min({r1, r2, r3}), Ratio(0), Ratio(0)};
  c.D = Ratio(c.R, m * n);
  c.C = Ratio(1, m * n * p);
  return c;
}

std::string_view scheme_name(Scheme s) {
  return s == Scheme::fpgmm ? "fpgmm" : "mrfpmm";
}

bool ncc_within(const Ratio& ncc, double bound) {
  return static_cast<long double>(ncc.numerator()) <=
         static_cast<long double>(bound) * static_cast<long double>(ncc.denominator());
}

namespace {

// True when candidate (ndc, R, m, n, x) beats the incumbent.
bool better(const TradeoffPoint& best, const Ratio& ndc, std::int64_t R,
            std::int64_t m, std::int64_t n, std::int64_t x) {
  if (!best.feasible) return true;
  if (ndc != best.ndc) return ndc < best.ndc;
  if (R != best.R) return R < best.R;
  return std::tie(m, n, x) < std::tie(best.m, best.n, best.r_or_p);
}

}  // namespace

TradeoffPoint optimize_tradeoff(Scheme scheme, double ncc_bound,
                                std::int64_t worker_cap, std::int64_t T,
                                std::int64_t s_size, const SearchLimits& limits) {
  if (!(ncc_bound > 0) || worker_cap <= 0 || T <= 0 || s_size <= 0) {
    throw Error("trade-off bounds must be positive");
  }
  TradeoffPoint best{scheme, ncc_bound, worker_cap, T, s_size};

  auto consider = [&](std::int64_t m, std::int64_t n, std::int64_t x,
                      std::int64_t R, const Ratio& ndc, const Ratio& ncc) {
    if (R > worker_cap || !ncc_within(ncc, ncc_bound)) return;
    if (!better(best, ndc, R, m, n, x)) return;
    best.feasible = true;
    best.m = m;
    best.n = n;
    best.r_or_p = x;
    best.R = R;
    best.ndc = ndc;
    best.ncc = ncc;
  };

  for (std::int64_t m = 1; m <= limits.max_m; ++m) {
    for (std::int64_t n = 1; n <= limits.max_n; ++n) {
      if (scheme == Scheme::fpgmm) {
        for (std::int64_t r = 1; r <= m * n; ++r) {
          if ((m * n) % r != 0) continue;
          auto c = fpgmm_metrics(m, n, r, T, s_size);
          consider(m, n, r, c.R, c.D, c.C);
        }
      } else {
        for (std::int64_t p = 1; p <= limits.max_p; ++p) {
          auto c = mrfpmm_metrics(m, n, p, T, s_size);
          consider(m, n, p, c.R, c.D, c.C);
        }
      }
    }
  }
  return best;
}

}  // namespace fpgmm
