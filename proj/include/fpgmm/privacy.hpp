#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fpgmm/encoder.hpp"
#include "fpgmm/instance.hpp"

namespace fpgmm {

struct EnumerationOptions {
  std::uint64_t budget = 10'000'000;  // max noise assignments
  bool zero_noise = false;            // negative control only
  std::size_t threads = 1;
};

/// Exact distribution of everything a colluding set sees, over all noise
/// assignments for one fixed plan.
struct QueryDistribution {
  std::vector<std::size_t> colluders;  // sorted, 0-based
  std::size_t z_dims = 0;              // T * r * (m L_A + n L_B)
  std::size_t tuple_length = 0;
  std::uint64_t assignments = 0;       // q^z_dims
  std::map<std::vector<u64>, std::uint64_t> histogram;

  /// Every tuple in GF(q)^tuple_length occurs equally often.
  bool is_uniform(u64 q) const;
};

/// Throws BudgetExceeded if q^z_dims exceeds the budget and Error for an
/// unknown worker id.
QueryDistribution enumerate_distribution(const ProtocolInstance& inst,
                                         const EvaluationPlan& plan,
                                         std::vector<std::size_t> colluders,
                                         const EnumerationOptions& opts = {});

struct PrivacyCheckOptions {
  EnumerationOptions enumeration;
  std::uint64_t seed = 0;
  GroupingPolicy grouping = GroupingPolicy::round_robin;
  PointPolicy points = PointPolicy::random;
};

struct Divergence {
  std::vector<u64> tuple;
  std::uint64_t count_s1 = 0;
  std::uint64_t count_s2 = 0;
};

struct PrivacyVerdict {
  bool pass = false;
  bool within_contract = true;  // |colluders| <= T
  u64 q = 0;
  std::size_t z_dims = 0;
  std::uint64_t assignments = 0;
  std::vector<std::size_t> colluders;
  DesiredSet s1, s2;
  std::size_t bins_s1 = 0, bins_s2 = 0;
  bool uniform_s1 = false, uniform_s2 = false;
  std::optional<Divergence> first_divergence;
};

/// PASS iff the colluders' exact query histograms agree bin for bin between
/// the two desired sets. Each set gets its own plan drawn from `seed`.
PrivacyVerdict privacy_check(const SchemeParams& params, const DesiredSet& s1,
                             const DesiredSet& s2,
                             const std::vector<std::size_t>& colluders,
                             const PrivacyCheckOptions& opts = {});

/// Statistical fallback for noise spaces too large to enumerate: chi-square
/// of each observed coordinate's marginal against uniform. Evidence, not proof.
struct MarginalUniformity {
  std::uint64_t samples = 0;
  std::size_t coordinates = 0;
  double max_chi_square = 0.0;
  std::size_t degrees_of_freedom = 0;
};

MarginalUniformity sample_marginals(const ProtocolInstance& inst,
                                    const EvaluationPlan& plan,
                                    const std::vector<std::size_t>& colluders,
                                    std::uint64_t samples, Rng& rng);

}  // namespace fpgmm
