#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "fpgmm/field.hpp"
#include "fpgmm/instance.hpp"

namespace fpgmm {

/// Master-private evaluation data: one pole per expanded pair and one point
/// per worker. Never leaves the master.
struct EvaluationPlan {
  Modulus q;
  std::vector<u64> poles;          // indexed by expanded position
  std::vector<u64> worker_points;  // indexed by worker (0-based)
};

enum class PointPolicy { random, ascending };
std::string_view policy_name(PointPolicy p);
PointPolicy parse_point_policy(std::string_view name);

/// Distinct poles and worker points with {poles} and {points} disjoint.
/// `ascending` uses poles 0..M-1 then points M..M+N-1 (regression fixtures).
/// Throws InsufficientField when q < |S~| + N.
EvaluationPlan assign_points(const SchemeParams& params,
                             const ExpandedSet& expanded, PointPolicy policy,
                             Rng& rng);

/// Noise coefficients z^a[i][k][t] and z^b[j][k][t].
class NoiseTensor {
 public:
  NoiseTensor(std::size_t rows_a, std::size_t rows_b, std::size_t r,
              std::size_t T);

  static NoiseTensor sample(const SchemeParams& params, Rng& rng);
  static NoiseTensor zeros(const SchemeParams& params);

  std::size_t rows_a() const { return rows_a_; }
  std::size_t rows_b() const { return rows_b_; }
  std::size_t groups() const { return r_; }
  std::size_t degree_terms() const { return T_; }

  u64& a(std::size_t i, std::size_t k, std::size_t t) { return za_[(i * r_ + k) * T_ + t]; }
  u64& b(std::size_t j, std::size_t k, std::size_t t) { return zb_[(j * r_ + k) * T_ + t]; }
  u64 a(std::size_t i, std::size_t k, std::size_t t) const { return za_[(i * r_ + k) * T_ + t]; }
  u64 b(std::size_t j, std::size_t k, std::size_t t) const { return zb_[(j * r_ + k) * T_ + t]; }

  /// Total number of noise symbols, T * r * (rows_a + rows_b).
  std::size_t dimension() const { return za_.size() + zb_.size(); }

 private:
  std::size_t rows_a_, rows_b_, r_, T_;
  std::vector<u64> za_;
  std::vector<u64> zb_;
};

/// prod over (i,j) in Q_k of (x - f_{i,j}).
FieldElement omega_eval(const Grouping& grouping, const EvaluationPlan& plan,
                        std::size_t k, const FieldElement& x);

/// omega_k(x) * (sum over A^k_i of 1/(x - f) + sum_t z^a[i][k][t] x^t).
/// Throws PointCollision if x is a pole.
FieldElement encode_a_eval(std::size_t i, std::size_t k, const FieldElement& x,
                           const Grouping& grouping, const EvaluationPlan& plan,
                           const NoiseTensor& noise);

/// sum over B^k_j of 1/(x - f) + sum_t z^b[j][k][t] x^t.
FieldElement encode_b_eval(std::size_t j, std::size_t k, const FieldElement& x,
                           const Grouping& grouping, const EvaluationPlan& plan,
                           const NoiseTensor& noise);

/// What a worker receives. Holds evaluations and public (m, n, r) only.
struct Query {
  std::size_t worker = 0;  // 0-based
  std::size_t m = 1, n = 1, r = 1;
  std::size_t rows_a = 0;  // m * L_A
  std::size_t rows_b = 0;  // n * L_B
  std::vector<u64> a_evals;  // rows_a x r, row-major
  std::vector<u64> b_evals;  // rows_b x r, row-major

  u64 a_eval(std::size_t i, std::size_t k) const { return a_evals[i * r + k]; }
  u64 b_eval(std::size_t j, std::size_t k) const { return b_evals[j * r + k]; }
  /// Number of field elements carried.
  std::size_t payload_size() const { return a_evals.size() + b_evals.size(); }
};

Query build_query(std::size_t worker, const SchemeParams& params,
                  const Grouping& grouping, const EvaluationPlan& plan,
                  const NoiseTensor& noise);

std::vector<Query> build_queries(const SchemeParams& params,
                                 const Grouping& grouping,
                                 const EvaluationPlan& plan,
                                 const NoiseTensor& noise);

}  // namespace fpgmm
