#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "fpgmm/encoder.hpp"
#include "fpgmm/matrix.hpp"
#include "fpgmm/worker.hpp"

namespace fpgmm {

/// Function family sum_l e_l / (z - f_l) + sum_{d <= degree} e_d z^d.
struct RationalBasisSpec {
  Modulus q;
  std::vector<u64> poles;  // canonical expanded order
  std::size_t poly_degree_bound = 0;

  std::size_t unknowns() const { return poles.size() + poly_degree_bound + 1; }
};

/// Poles of the plan with degree bound delta + 2T - 2.
RationalBasisSpec make_basis_spec(const ProtocolInstance& inst,
                                  const EvaluationPlan& plan);

/// Residue of omega_k(x) / (x - f_target)^2 at f_target, i.e.
/// prod over Q_k \ {target} of (f_target - f). Throws Error if the target is
/// not a member of group k.
FieldElement gamma_constant(const Grouping& grouping, const EvaluationPlan& plan,
                            std::size_t k, std::size_t target_index);
FieldElement gamma_constant(const Grouping& grouping, const EvaluationPlan& plan,
                            std::size_t target_index);

/// Row g: [1/(x_g - f_1) .. 1/(x_g - f_M), 1, x_g, .., x_g^degree].
/// Throws PointCollision on duplicate points or a point equal to a pole, and
/// DimensionMismatch unless points.size() == spec.unknowns().
BlockMatrix build_system(const RationalBasisSpec& spec, std::span<const u64> points);

/// Gauss-Jordan inverse; InternalError when singular.
BlockMatrix invert(const BlockMatrix& mat);

struct RecoveredProducts {
  std::map<ProductIndex, BlockMatrix> blocks;  // keyed by expanded pair
  std::vector<std::size_t> used_workers;       // ascending, 0-based
};

/// Uses the R lowest-numbered distinct workers among `outputs`. Throws
/// InsufficientResponses when fewer than R are available.
RecoveredProducts solve_and_extract(std::span<const WorkerOutput> outputs,
                                    const RationalBasisSpec& spec,
                                    const EvaluationPlan& plan,
                                    const Grouping& grouping);

/// Reassembles each requested A_i B_j from its m x n block grid.
std::map<ProductIndex, BlockMatrix> assemble(const RecoveredProducts& recovered,
                                             const ExpandedSet& expanded);

}  // namespace fpgmm
