#include "fpgmm/encoder.hpp"

#include <algorithm>
#include <string>

namespace fpgmm {

namespace {

void require_not_pole(const EvaluationPlan& plan, u64 x) {
  if (std::find(plan.poles.begin(), plan.poles.end(), x) != plan.poles.end()) {
    throw PointCollision("evaluation point " + std::to_string(x) +
                         " coincides with a pole");
  }
}

// sum_t z_t x^t by Horner.
u64 noise_poly(const Modulus& q, u64 x, std::size_t T, auto&& coeff) {
  u64 acc = 0;
  for (std::size_t t = T; t-- > 0;) acc = q.add(q.mul(acc, x), coeff(t));
  return acc;
}

}  // namespace

std::string_view policy_name(PointPolicy p) {
  return p == PointPolicy::random ? "random" : "ascending";
}

PointPolicy parse_point_policy(std::string_view name) {
  if (name == "random") return PointPolicy::random;
  if (name == "ascending") return PointPolicy::ascending;
  throw Error("unknown point policy '" + std::string(name) + "'");
}

EvaluationPlan assign_points(const SchemeParams& params,
                             const ExpandedSet& expanded, PointPolicy policy,
                             Rng& rng) {
  const std::size_t M = expanded.size();
  const std::size_t N = params.N;
  const u64 q = params.q.value();
  if (q < static_cast<u64>(M) + N) {
    throw InsufficientField("need " + std::to_string(M + N) +
                            " distinct residues but q=" + std::to_string(q));
  }
  EvaluationPlan plan{params.q, {}, {}};
  plan.poles.reserve(M);
  plan.worker_points.reserve(N);
  if (policy == PointPolicy::ascending) {
    for (std::size_t t = 0; t < M; ++t) plan.poles.push_back(t);
    for (std::size_t g = 0; g < N; ++g) plan.worker_points.push_back(M + g);
    return plan;
  }
  auto draws = sample_distinct(params.q, M + N, {}, rng);
  for (std::size_t t = 0; t < M; ++t) plan.poles.push_back(draws[t].value());
  for (std::size_t g = 0; g < N; ++g) plan.worker_points.push_back(draws[M + g].value());
  return plan;
}

NoiseTensor::NoiseTensor(std::size_t rows_a, std::size_t rows_b, std::size_t r,
                         std::size_t T)
    : rows_a_(rows_a),
      rows_b_(rows_b),
      r_(r),
      T_(T),
      za_(rows_a * r * T, 0),
      zb_(rows_b * r * T, 0) {}

NoiseTensor NoiseTensor::sample(const SchemeParams& params, Rng& rng) {
  NoiseTensor z = zeros(params);
  const u64 q = params.q.value();
  for (u64& v : z.za_) v = uniform_residue(q, rng);
  for (u64& v : z.zb_) v = uniform_residue(q, rng);
  return z;
}

NoiseTensor NoiseTensor::zeros(const SchemeParams& params) {
  return NoiseTensor(params.m * params.lib_a, params.n * params.lib_b, params.r,
                     params.T);
}

FieldElement omega_eval(const Grouping& grouping, const EvaluationPlan& plan,
                        std::size_t k, const FieldElement& x) {
  const Modulus q = plan.q;
  FieldElement acc = FieldElement::one(q);
  for (const GroupMember& mem : grouping.groups.at(k)) {
    acc *= x - FieldElement(q, plan.poles[mem.index]);
  }
  return acc;
}

FieldElement encode_a_eval(std::size_t i, std::size_t k, const FieldElement& x,
                           const Grouping& grouping, const EvaluationPlan& plan,
                           const NoiseTensor& noise) {
  require_not_pole(plan, x.value());
  const Modulus q = plan.q;
  FieldElement sum = FieldElement::zero(q);
  for (const GroupMember& mem : grouping.a_set(i, k)) {
    sum += (x - FieldElement(q, plan.poles[mem.index])).inv();
  }
  sum += FieldElement(q, noise_poly(q, x.value(), noise.degree_terms(),
                                    [&](std::size_t t) { return noise.a(i, k, t); }));
  return omega_eval(grouping, plan, k, x) * sum;
}

FieldElement encode_b_eval(std::size_t j, std::size_t k, const FieldElement& x,
                           const Grouping& grouping, const EvaluationPlan& plan,
                           const NoiseTensor& noise) {
  require_not_pole(plan, x.value());
  const Modulus q = plan.q;
  FieldElement sum = FieldElement::zero(q);
  for (const GroupMember& mem : grouping.b_set(j, k)) {
    sum += (x - FieldElement(q, plan.poles[mem.index])).inv();
  }
  sum += FieldElement(q, noise_poly(q, x.value(), noise.degree_terms(),
                                    [&](std::size_t t) { return noise.b(j, k, t); }));
  return sum;
}

Query build_query(std::size_t worker, const SchemeParams& params,
                  const Grouping& grouping, const EvaluationPlan& plan,
                  const NoiseTensor& noise) {
  const Modulus q = plan.q;
  const u64 x = plan.worker_points.at(worker);
  require_not_pole(plan, x);
  const std::size_t r = grouping.r();

  Query out;
  out.worker = worker;
  out.m = params.m;
  out.n = params.n;
  out.r = r;
  out.rows_a = noise.rows_a();
  out.rows_b = noise.rows_b();
  out.a_evals.assign(out.rows_a * r, 0);
  out.b_evals.assign(out.rows_b * r, 0);

  // Rational parts: each member contributes 1/(x - f) to exactly one
  // a-entry and one b-entry of its group.
  std::vector<u64> omega(r, 1);
  for (std::size_t k = 0; k < r; ++k) {
    for (const GroupMember& mem : grouping.groups[k]) {
      const u64 diff = q.sub(x, plan.poles[mem.index]);
      omega[k] = q.mul(omega[k], diff);
      const u64 term = q.inv(diff);
      u64& a = out.a_evals[mem.pair.left * r + k];
      u64& b = out.b_evals[mem.pair.right * r + k];
      a = q.add(a, term);
      b = q.add(b, term);
    }
  }
  for (std::size_t i = 0; i < out.rows_a; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      u64& a = out.a_evals[i * r + k];
      a = q.add(a, noise_poly(q, x, noise.degree_terms(),
                              [&](std::size_t t) { return noise.a(i, k, t); }));
      a = q.mul(a, omega[k]);
    }
  }
  for (std::size_t j = 0; j < out.rows_b; ++j) {
    for (std::size_t k = 0; k < r; ++k) {
      u64& b = out.b_evals[j * r + k];
      b = q.add(b, noise_poly(q, x, noise.degree_terms(),
                              [&](std::size_t t) { return noise.b(j, k, t); }));
    }
  }
  return out;
}

std::vector<Query> build_queries(const SchemeParams& params,
                                 const Grouping& grouping,
                                 const EvaluationPlan& plan,
                                 const NoiseTensor& noise) {
  std::vector<Query> out;
  out.reserve(plan.worker_points.size());
  for (std::size_t g = 0; g < plan.worker_points.size(); ++g) {
    out.push_back(build_query(g, params, grouping, plan, noise));
  }
  return out;
}

}  // namespace fpgmm
