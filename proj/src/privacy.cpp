#include "fpgmm/privacy.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace fpgmm {

namespace {

// Each observed evaluation is base + sum coeff * z[var]: the a-encodings are
// omega_k(x) times an affine function of their T noise symbols.
struct AffineEntry {
  u64 base;
  std::vector<std::pair<std::size_t, u64>> terms;
};

std::vector<AffineEntry> affine_view(const ProtocolInstance& inst,
                                     const EvaluationPlan& plan,
                                     const std::vector<std::size_t>& colluders) {
  const SchemeParams& p = inst.params;
  const Modulus q = p.q;
  const NoiseTensor zeros = NoiseTensor::zeros(p);
  const std::size_t r = p.r, T = p.T;
  const std::size_t b_offset = zeros.rows_a() * r * T;

  std::vector<AffineEntry> out;
  for (std::size_t g : colluders) {
    const Query base = build_query(g, p, inst.grouping, plan, zeros);
    const u64 x = plan.worker_points[g];
    std::vector<u64> omega(r);
    for (std::size_t k = 0; k < r; ++k) {
      omega[k] = omega_eval(inst.grouping, plan, k, FieldElement(q, x)).value();
    }
    for (std::size_t i = 0; i < base.rows_a; ++i) {
      for (std::size_t k = 0; k < r; ++k) {
        AffineEntry e{base.a_eval(i, k), {}};
        u64 power = omega[k];
        for (std::size_t t = 0; t < T; ++t) {
          e.terms.emplace_back((i * r + k) * T + t, power);
          power = q.mul(power, x);
        }
        out.push_back(std::move(e));
      }
    }
    for (std::size_t j = 0; j < base.rows_b; ++j) {
      for (std::size_t k = 0; k < r; ++k) {
        AffineEntry e{base.b_eval(j, k), {}};
        u64 power = 1 % q.value();
        for (std::size_t t = 0; t < T; ++t) {
          e.terms.emplace_back(b_offset + (j * r + k) * T + t, power);
          power = q.mul(power, x);
        }
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

// q^e, or nullopt if it exceeds `cap`.
std::optional<std::uint64_t> bounded_power(u64 q, std::size_t e, std::uint64_t cap) {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (acc > cap / q) return std::nullopt;
    acc *= q;
  }
  return acc;
}

using Histogram = std::map<std::vector<u64>, std::uint64_t>;

Histogram enumerate_range(const std::vector<AffineEntry>& view, const Modulus& q,
                          std::size_t z_dims, std::uint64_t begin, std::uint64_t end) {
  Histogram h;
  std::vector<u64> z(z_dims, 0);
  std::uint64_t rest = begin;
  for (std::size_t d = 0; d < z_dims; ++d) {
    z[d] = rest % q.value();
    rest /= q.value();
  }
  std::vector<u64> tuple(view.size());
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    for (std::size_t e = 0; e < view.size(); ++e) {
      u64 v = view[e].base;
      for (const auto& [var, coeff] : view[e].terms) v = q.add(v, q.mul(coeff, z[var]));
      tuple[e] = v;
    }
    ++h[tuple];
    for (std::size_t d = 0; d < z_dims; ++d) {
      if (++z[d] < q.value()) break;
      z[d] = 0;
    }
  }
  return h;
}

}  // namespace

bool QueryDistribution::is_uniform(u64 q) const {
  auto cells = bounded_power(q, tuple_length, assignments);
  if (!cells || histogram.size() != *cells) return false;
  const std::uint64_t expect = assignments / *cells;
  return std::all_of(histogram.begin(), histogram.end(),
                     [&](const auto& kv) { return kv.second == expect; });
}

QueryDistribution enumerate_distribution(const ProtocolInstance& inst,
                                         const EvaluationPlan& plan,
                                         std::vector<std::size_t> colluders,
                                         const EnumerationOptions& opts) {
  const SchemeParams& p = inst.params;
  std::sort(colluders.begin(), colluders.end());
  colluders.erase(std::unique(colluders.begin(), colluders.end()), colluders.end());
  for (std::size_t g : colluders) {
    if (g >= plan.worker_points.size()) {
      throw Error("colluder " + std::to_string(g + 1) + " is not a worker");
    }
  }

  QueryDistribution dist;
  dist.colluders = colluders;
  dist.z_dims = p.T * p.r * (p.m * p.lib_a + p.n * p.lib_b);
  auto total = bounded_power(p.q.value(), dist.z_dims, opts.budget);
  if (!total) {
    throw BudgetExceeded("q^|Z| = " + std::to_string(p.q.value()) + "^" +
                         std::to_string(dist.z_dims) + " exceeds the budget of " +
                         std::to_string(opts.budget) + " assignments");
  }
  dist.assignments = *total;

  const auto view = affine_view(inst, plan, colluders);
  dist.tuple_length = view.size();

  if (opts.zero_noise) {
    std::vector<u64> tuple;
    for (const auto& e : view) tuple.push_back(e.base);
    dist.histogram.emplace(std::move(tuple), dist.assignments);
    return dist;
  }

  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::uint64_t>(opts.threads, dist.assignments));
  if (threads == 1) {
    dist.histogram = enumerate_range(view, p.q, dist.z_dims, 0, dist.assignments);
    return dist;
  }
  std::vector<Histogram> parts(threads);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (dist.assignments + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::uint64_t lo = t * chunk;
      const std::uint64_t hi = std::min(dist.assignments, lo + chunk);
      pool.emplace_back([&, t, lo, hi] {
        if (lo < hi) parts[t] = enumerate_range(view, p.q, dist.z_dims, lo, hi);
      });
    }
  }
  for (auto& part : parts) {
    for (auto& [k, v] : part) dist.histogram[k] += v;
  }
  return dist;
}

PrivacyVerdict privacy_check(const SchemeParams& params, const DesiredSet& s1,
                             const DesiredSet& s2,
                             const std::vector<std::size_t>& colluders,
                             const PrivacyCheckOptions& opts) {
  const ValidationOptions relaxed{.require_enough_workers = false};

  auto distribution = [&](const DesiredSet& s, std::uint64_t tag) {
    Rng rng = Rng(opts.seed).split(tag);
    ProtocolInstance inst = make_instance(params, s, opts.grouping, rng, relaxed);
    EvaluationPlan plan = assign_points(params, inst.expanded, opts.points, rng);
    return enumerate_distribution(inst, plan, colluders, opts.enumeration);
  };
  const QueryDistribution d1 = distribution(s1, 1);
  const QueryDistribution d2 = distribution(s2, 2);

  PrivacyVerdict v;
  v.q = params.q.value();
  v.z_dims = d1.z_dims;
  v.assignments = d1.assignments;
  v.colluders = d1.colluders;
  v.within_contract = d1.colluders.size() <= params.T;
  v.s1 = s1;
  v.s2 = s2;
  v.bins_s1 = d1.histogram.size();
  v.bins_s2 = d2.histogram.size();
  v.uniform_s1 = d1.is_uniform(v.q);
  v.uniform_s2 = d2.is_uniform(v.q);

  // Walk both sorted histograms together; report the first unequal bin.
  auto a = d1.histogram.begin();
  auto b = d2.histogram.begin();
  while (a != d1.histogram.end() || b != d2.histogram.end()) {
    if (b == d2.histogram.end() || (a != d1.histogram.end() && a->first < b->first)) {
      v.first_divergence = Divergence{a->first, a->second, 0};
      break;
    }
    if (a == d1.histogram.end() || b->first < a->first) {
      v.first_divergence = Divergence{b->first, 0, b->second};
      break;
    }
    if (a->second != b->second) {
      v.first_divergence = Divergence{a->first, a->second, b->second};
      break;
    }
    ++a;
    ++b;
  }
  v.pass = !v.first_divergence.has_value();
  return v;
}

MarginalUniformity sample_marginals(const ProtocolInstance& inst,
                                    const EvaluationPlan& plan,
                                    const std::vector<std::size_t>& colluders,
                                    std::uint64_t samples, Rng& rng) {
  const u64 q = inst.params.q.value();
  if (q > 4096) throw Error("marginal histogram needs a small field");
  std::vector<std::vector<std::uint64_t>> counts;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const NoiseTensor noise = NoiseTensor::sample(inst.params, rng);
    std::size_t coord = 0;
    for (std::size_t g : colluders) {
      const Query qy = build_query(g, inst.params, inst.grouping, plan, noise);
      for (const auto* evals : {&qy.a_evals, &qy.b_evals}) {
        for (u64 v : *evals) {
          if (coord == counts.size()) counts.emplace_back(q, 0);
          ++counts[coord++][v];
        }
      }
    }
  }
  MarginalUniformity out{samples, counts.size(), 0.0, static_cast<std::size_t>(q - 1)};
  const double expect = static_cast<double>(samples) / static_cast<double>(q);
  for (const auto& c : counts) {
    double chi = 0.0;
    for (std::uint64_t v : c) {
      const double d = static_cast<double>(v) - expect;
      chi += d * d / expect;
    }
    out.max_chi_square = std::max(out.max_chi_square, chi);
  }
  return out;
}

}  // namespace fpgmm
