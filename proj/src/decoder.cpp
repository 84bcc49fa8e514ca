#include "fpgmm/decoder.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace fpgmm {

RationalBasisSpec make_basis_spec(const ProtocolInstance& inst,
                                  const EvaluationPlan& plan) {
  return {plan.q, plan.poles, inst.grouping.delta + 2 * inst.params.T - 2};
}

FieldElement gamma_constant(const Grouping& grouping, const EvaluationPlan& plan,
                            std::size_t k, std::size_t target_index) {
  const auto& members = grouping.groups.at(k);
  auto is_target = [&](const GroupMember& g) { return g.index == target_index; };
  if (std::none_of(members.begin(), members.end(), is_target)) {
    throw Error("expanded pair " + std::to_string(target_index) +
                " is not in group " + std::to_string(k));
  }
  const Modulus q = plan.q;
  const FieldElement f(q, plan.poles.at(target_index));
  FieldElement acc = FieldElement::one(q);
  for (const GroupMember& g : members) {
    if (g.index != target_index) acc *= f - FieldElement(q, plan.poles[g.index]);
  }
  return acc;
}

FieldElement gamma_constant(const Grouping& grouping, const EvaluationPlan& plan,
                            std::size_t target_index) {
  return gamma_constant(grouping, plan, grouping.group_of.at(target_index), target_index);
}

BlockMatrix build_system(const RationalBasisSpec& spec, std::span<const u64> points) {
  const std::size_t R = spec.unknowns();
  if (points.size() != R) {
    throw DimensionMismatch("system needs " + std::to_string(R) + " points, got " +
                            std::to_string(points.size()));
  }
  const Modulus q = spec.q;
  std::set<u64> seen;
  std::set<u64> poles(spec.poles.begin(), spec.poles.end());
  for (u64 x : points) {
    if (!seen.insert(x).second) {
      throw PointCollision("duplicate evaluation point " + std::to_string(x));
    }
    if (poles.contains(x)) {
      throw PointCollision("evaluation point " + std::to_string(x) + " is a pole");
    }
  }

  BlockMatrix sys(q, R, R);
  auto out = sys.mutable_entries();
  const std::size_t M = spec.poles.size();
  for (std::size_t g = 0; g < R; ++g) {
    const u64 x = q.reduce(points[g]);
    u64* row = out.data() + g * R;
    for (std::size_t l = 0; l < M; ++l) row[l] = q.inv(q.sub(x, spec.poles[l]));
    u64 power = 1 % q.value();
    for (std::size_t d = 0; d <= spec.poly_degree_bound; ++d) {
      row[M + d] = power;
      power = q.mul(power, x);
    }
  }
  return sys;
}

BlockMatrix invert(const BlockMatrix& mat) {
  if (mat.rows() != mat.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = mat.rows();
  const Modulus q = mat.modulus();
  // Augmented [mat | I], reduced in place.
  const std::size_t w = 2 * n;
  std::vector<u64> aug(n * w, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto src = mat.row(i);
    std::copy(src.begin(), src.end(), aug.begin() + i * w);
    aug[i * w + n + i] = 1 % q.value();
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && aug[pivot * w + col] == 0) ++pivot;
    if (pivot == n) throw InternalError("singular interpolation system");
    if (pivot != col) {
      std::swap_ranges(aug.begin() + pivot * w, aug.begin() + (pivot + 1) * w,
                       aug.begin() + col * w);
    }
    u64* prow = aug.data() + col * w;
    const u64 scale = q.inv(prow[col]);
    for (std::size_t j = 0; j < w; ++j) prow[j] = q.mul(prow[j], scale);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      u64* row = aug.data() + i * w;
      const u64 factor = row[col];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < w; ++j) row[j] = q.sub(row[j], q.mul(factor, prow[j]));
    }
  }
  std::vector<u64> inv(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(aug.begin() + i * w + n, aug.begin() + (i + 1) * w, inv.begin() + i * n);
  }
  return BlockMatrix::from_entries(q, n, n, std::move(inv));
}

RecoveredProducts solve_and_extract(std::span<const WorkerOutput> outputs,
                                    const RationalBasisSpec& spec,
                                    const EvaluationPlan& plan,
                                    const Grouping& grouping) {
  const std::size_t R = spec.unknowns();
  const Modulus q = spec.q;

  std::vector<const WorkerOutput*> chosen;
  {
    std::vector<const WorkerOutput*> sorted;
    for (const auto& o : outputs) sorted.push_back(&o);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](auto* a, auto* b) { return a->worker < b->worker; });
    for (const WorkerOutput* o : sorted) {
      if (!chosen.empty() && chosen.back()->worker == o->worker) continue;
      chosen.push_back(o);
    }
  }
  if (chosen.size() < R) throw InsufficientResponses(R, chosen.size());
  chosen.resize(R);

  const std::size_t rows = chosen.front()->U.rows();
  const std::size_t cols = chosen.front()->U.cols();
  const std::size_t E = rows * cols;
  std::vector<u64> points;
  std::vector<u64> stacked;
  stacked.reserve(R * E);
  for (const WorkerOutput* o : chosen) {
    if (o->U.rows() != rows || o->U.cols() != cols) {
      throw DimensionMismatch("worker outputs disagree in shape");
    }
    points.push_back(plan.worker_points.at(o->worker));
    stacked.insert(stacked.end(), o->U.entries().begin(), o->U.entries().end());
  }

  // One inverse serves all E entry positions: coefficients = V^{-1} * Y.
  const BlockMatrix system_inv = invert(build_system(spec, points));
  const BlockMatrix coeffs =
      matmul(system_inv, BlockMatrix::from_entries(q, R, E, std::move(stacked)));

  std::vector<ProductIndex> pair_of(spec.poles.size());
  for (const auto& grp : grouping.groups) {
    for (const GroupMember& g : grp) pair_of.at(g.index) = g.pair;
  }

  RecoveredProducts out;
  for (const WorkerOutput* o : chosen) out.used_workers.push_back(o->worker);
  for (std::size_t t = 0; t < spec.poles.size(); ++t) {
    const u64 unscale = gamma_constant(grouping, plan, t).inv().value();
    auto src = coeffs.row(t);
    std::vector<u64> block(E);
    for (std::size_t e = 0; e < E; ++e) block[e] = q.mul(src[e], unscale);
    out.blocks.emplace(pair_of[t], BlockMatrix::from_entries(q, rows, cols, std::move(block)));
  }
  return out;
}

std::map<ProductIndex, BlockMatrix> assemble(const RecoveredProducts& recovered,
                                             const ExpandedSet& expanded) {
  std::map<ProductIndex, std::vector<std::vector<const BlockMatrix*>>> grids;
  for (std::size_t t = 0; t < expanded.size(); ++t) {
    const BlockOrigin& o = expanded.origins[t];
    auto& grid = grids[o.source];
    if (grid.empty()) {
      grid.assign(expanded.m, std::vector<const BlockMatrix*>(expanded.n, nullptr));
    }
    auto it = recovered.blocks.find(expanded.pairs[t]);
    if (it == recovered.blocks.end()) {
      throw Error("missing block (" + to_string(expanded.pairs[t]) + ") for product (" +
                  to_string(o.source) + ")");
    }
    grid[o.a][o.b] = &it->second;
  }
  std::map<ProductIndex, BlockMatrix> out;
  for (const auto& [src, grid] : grids) {
    std::vector<std::vector<BlockMatrix>> blocks;
    for (const auto& row : grid) {
      auto& dst = blocks.emplace_back();
      for (const BlockMatrix* b : row) dst.push_back(*b);
    }
    out.emplace(src, assemble_grid(blocks));
  }
  return out;
}

}  // namespace fpgmm
