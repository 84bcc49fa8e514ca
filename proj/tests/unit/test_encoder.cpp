#include <doctest.h>

#include <set>

#include "fpgmm/encoder.hpp"
#include "oracles.hpp"

using namespace fpgmm;

namespace {

SchemeParams worked_params(u64 q = 13) {
  SchemeParams p;
  p.alpha = 4;
  p.lib_a = 2;
  p.lib_b = 2;
  p.m = 1;
  p.n = 2;
  p.r = 2;
  p.T = 1;
  p.N = 7;
  p.q = Modulus(q);
  return p;
}

const DesiredSet kWorkedSet({{0, 0}, {0, 1}});

u64 inv7(u64 a) { return oracle::brute_inverse(a % 7, 7); }

}  // namespace

TEST_CASE("point assignment") {
  Rng rng(1);
  const auto ex = expand(kWorkedSet, 1, 2);
  const auto plan = assign_points(worked_params(), ex, PointPolicy::random, rng);
  CHECK(plan.poles.size() == 4);
  CHECK(plan.worker_points.size() == 7);
  std::set<u64> all(plan.poles.begin(), plan.poles.end());
  all.insert(plan.worker_points.begin(), plan.worker_points.end());
  CHECK(all.size() == 11);
  for (u64 v : all) CHECK(v < 13);

  SchemeParams exact = worked_params(11);  // |S~| + N = 11 = q
  const auto full = assign_points(exact, ex, PointPolicy::random, rng);
  std::set<u64> every(full.poles.begin(), full.poles.end());
  every.insert(full.worker_points.begin(), full.worker_points.end());
  CHECK(every.size() == 11);

  CHECK_THROWS_AS(assign_points(worked_params(7), ex, PointPolicy::random, rng),
                  InsufficientField);

  const auto asc = assign_points(worked_params(), ex, PointPolicy::ascending, rng);
  CHECK(asc.poles == std::vector<u64>{0, 1, 2, 3});
  CHECK(asc.worker_points.front() == 4);
  CHECK(asc.worker_points.back() == 10);
}

TEST_CASE("single-factor omega and encodings at q=7") {
  SchemeParams p;
  p.alpha = 1;
  p.lib_a = p.lib_b = 1;
  p.N = 3;
  p.q = Modulus(7);
  const auto ex = expand(DesiredSet({{0, 0}}), 1, 1);
  const auto g = group(ex, 1);
  const EvaluationPlan plan{p.q, {2}, {5, 6, 0}};
  const FieldElement x(p.q, 5);

  CHECK(omega_eval(g, plan, 0, x).value() == 3);
  CHECK(omega_eval(g, plan, 0, FieldElement(p.q, 2)).is_zero());

  NoiseTensor z(1, 1, 1, 1);
  CHECK(encode_a_eval(0, 0, x, g, plan, z).value() == 1);  // (5-2) * 1/(5-2)
  CHECK(encode_b_eval(0, 0, x, g, plan, z).value() == inv7(3));
  for (u64 za = 0; za < 7; ++za) {
    z.a(0, 0, 0) = za;
    z.b(0, 0, 0) = za;
    // omega(x) (1/(x-f) + z) and 1/(x-f) + z by hand
    CHECK(encode_a_eval(0, 0, x, g, plan, z).value() == (3 * (inv7(3) + za)) % 7);
    CHECK(encode_b_eval(0, 0, x, g, plan, z).value() == (inv7(3) + za) % 7);
  }
  CHECK_THROWS_AS(encode_a_eval(0, 0, FieldElement(p.q, 2), g, plan, z), PointCollision);
}

TEST_CASE("empty member sets with zero noise vanish") {
  const SchemeParams p = worked_params();
  const auto ex = expand(kWorkedSet, 1, 2);
  const auto g = group(ex, 2);
  Rng rng(5);
  const auto plan = assign_points(p, ex, PointPolicy::random, rng);
  const auto z = NoiseTensor::zeros(p);
  const FieldElement x(p.q, plan.worker_points[0]);
  // A_2 appears in no group
  CHECK(encode_a_eval(1, 0, x, g, plan, z).is_zero());
  CHECK(encode_a_eval(1, 1, x, g, plan, z).is_zero());
  // B~ columns 1 and 3 (0-based) only in group 1, columns 0 and 2 only in group 0.
  CHECK(encode_b_eval(1, 0, x, g, plan, z).is_zero());
  CHECK(encode_b_eval(0, 1, x, g, plan, z).is_zero());
  const FieldElement f0(p.q, plan.poles[0]);
  CHECK(encode_b_eval(0, 0, x, g, plan, z) == (x - f0).inv());

  // Row 0 of group 0 carries both poles of the group: omega * (1/(x-f0) + 1/(x-f2))
  const FieldElement f2(p.q, plan.poles[2]);
  CHECK(encode_a_eval(0, 0, x, g, plan, z) == (x - f2) + (x - f0));
}

TEST_CASE("queries") {
  const SchemeParams p = worked_params();
  const auto ex = expand(kWorkedSet, 1, 2);
  const auto g = group(ex, 2);
  Rng rng(6);
  const auto plan = assign_points(p, ex, PointPolicy::random, rng);
  const auto z = NoiseTensor::sample(p, rng);
  CHECK(z.dimension() == p.T * p.r * (p.m * p.lib_a + p.n * p.lib_b));
  const auto qs = build_queries(p, g, plan, z);
  REQUIRE(qs.size() == 7);
  for (const auto& q : qs) {
    CHECK(q.payload_size() == p.r * (p.m * p.lib_a + p.n * p.lib_b));
    const FieldElement x(p.q, plan.worker_points[q.worker]);
    for (std::size_t i = 0; i < q.rows_a; ++i) {
      for (std::size_t k = 0; k < q.r; ++k) {
        CHECK(q.a_eval(i, k) == encode_a_eval(i, k, x, g, plan, z).value());
      }
    }
    for (std::size_t j = 0; j < q.rows_b; ++j) {
      for (std::size_t k = 0; k < q.r; ++k) {
        CHECK(q.b_eval(j, k) == encode_b_eval(j, k, x, g, plan, z).value());
      }
    }
  }
  CHECK(qs[0].a_evals != qs[1].a_evals);
}

TEST_CASE("omega has exactly the group poles as roots") {
  const SchemeParams p = worked_params(2147483647ULL);
  const auto ex = expand(DesiredSet({{0, 0}, {1, 1}}), 2, 2);
  const auto g = group(ex, 2);
  Rng rng(12);
  const auto plan = assign_points(p, ex, PointPolicy::random, rng);
  const u64 q = p.q.value();
  for (std::size_t k = 0; k < g.r(); ++k) {
    // delta + 2 samples; the interpolant must have degree exactly delta.
    std::vector<u64> xs, ys;
    for (u64 t = 0; t < g.delta + 2; ++t) {
      xs.push_back(1000 + t);
      ys.push_back(omega_eval(g, plan, k, FieldElement(p.q, 1000 + t)).value());
    }
    const auto coeffs = oracle::interpolate(xs, ys, q);
    CHECK(oracle::degree(coeffs) == g.delta);
    CHECK(coeffs[g.delta] == 1);
    for (const auto& mem : g.groups[k]) {
      CHECK(omega_eval(g, plan, k, FieldElement(p.q, plan.poles[mem.index])).is_zero());
    }
  }
}
