#include "fpgmm/instance.hpp"

#include <algorithm>
#include <numeric>

namespace fpgmm {

std::string to_string(const ProductIndex& p) {
  return std::to_string(p.left + 1) + "," + std::to_string(p.right + 1);
}

DesiredSet::DesiredSet(std::vector<ProductIndex> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
}

std::string_view issue_name(ValidationIssue issue) {
  switch (issue) {
    case ValidationIssue::empty_desired_set:
      return "empty_desired_set";
    case ValidationIssue::index_out_of_range:
      return "index_out_of_range";
    case ValidationIssue::duplicate_pair:
      return "duplicate_pair";
    case ValidationIssue::non_positive_parameter:
      return "non_positive_parameter";
    case ValidationIssue::partition_does_not_divide_alpha:
      return "partition_does_not_divide_alpha";
    case ValidationIssue::groups_do_not_divide_blocks:
      return "groups_do_not_divide_blocks";
    case ValidationIssue::field_too_small:
      return "field_too_small";
    case ValidationIssue::too_few_workers:
      return "too_few_workers";
  }
  return "unknown";
}

std::size_t recovery_threshold(const SchemeParams& p, std::size_t s_size) {
  const std::size_t blocks = s_size * p.m * p.n;
  return blocks + blocks / p.r + 2 * p.T - 1;
}

std::vector<ValidationError> check(const SchemeParams& p, const DesiredSet& s,
                                   const ValidationOptions& opts) {
  using V = ValidationIssue;
  std::vector<ValidationError> issues;
  auto fail = [&](V v, std::string detail) { issues.emplace_back(v, detail); };

  if (s.empty()) fail(V::empty_desired_set, "S must contain at least one pair");

  const std::pair<const char*, std::size_t> positives[] = {
      {"alpha", p.alpha}, {"L_A", p.lib_a}, {"L_B", p.lib_b}, {"m", p.m},
      {"n", p.n},         {"r", p.r},       {"T", p.T},       {"N", p.N}};
  bool all_positive = true;
  for (const auto& [name, v] : positives) {
    if (v == 0) {
      fail(V::non_positive_parameter, std::string(name) + " must be positive");
      all_positive = false;
    }
  }

  for (std::size_t k = 0; k < s.size(); ++k) {
    const ProductIndex& pr = s.pairs()[k];
    if (pr.left >= p.lib_a || pr.right >= p.lib_b) {
      fail(V::index_out_of_range,
           "pair (" + to_string(pr) + ") outside [" + std::to_string(p.lib_a) +
               "] x [" + std::to_string(p.lib_b) + "]");
    }
    if (k > 0 && s.pairs()[k - 1] == pr) {
      fail(V::duplicate_pair, "pair (" + to_string(pr) + ") listed twice");
    }
  }
  if (!all_positive) return issues;

  if (p.alpha % p.m != 0) {
    fail(V::partition_does_not_divide_alpha,
         "m=" + std::to_string(p.m) + " does not divide alpha=" + std::to_string(p.alpha));
  }
  if (p.alpha % p.n != 0) {
    fail(V::partition_does_not_divide_alpha,
         "n=" + std::to_string(p.n) + " does not divide alpha=" + std::to_string(p.alpha));
  }
  const bool groups_ok = (p.m * p.n) % p.r == 0;
  if (!groups_ok) {
    fail(V::groups_do_not_divide_blocks,
         "r=" + std::to_string(p.r) + " does not divide mn=" + std::to_string(p.m * p.n));
  }
  if (s.empty()) return issues;

  const std::size_t blocks = s.size() * p.m * p.n;
  const u64 needed = static_cast<u64>(blocks) + p.N;
  if (p.q.value() < needed) {
    fail(V::field_too_small, "q=" + std::to_string(p.q.value()) + " < |S|mn + N = " +
                                 std::to_string(needed));
  }
  if (opts.require_enough_workers && groups_ok) {
    const std::size_t R = recovery_threshold(p, s.size());
    if (p.N < R) {
      fail(V::too_few_workers,
           "N=" + std::to_string(p.N) + " < recovery threshold R=" + std::to_string(R));
    }
  }
  return issues;
}

void validate(const SchemeParams& params, const DesiredSet& s,
              const ValidationOptions& opts) {
  auto issues = check(params, s, opts);
  if (!issues.empty()) throw issues.front();
}

std::optional<std::size_t> ExpandedSet::index_of(const ProductIndex& p) const {
  auto it = std::find(pairs.begin(), pairs.end(), p);
  if (it == pairs.end()) return std::nullopt;
  return static_cast<std::size_t>(it - pairs.begin());
}

ExpandedSet expand(const DesiredSet& s, std::size_t m, std::size_t n) {
  ExpandedSet out;
  out.m = m;
  out.n = n;
  out.pairs.reserve(s.size() * m * n);
  out.origins.reserve(s.size() * m * n);
  for (const ProductIndex& src : s.pairs()) {
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        out.pairs.push_back({m * src.left + a, n * src.right + b});
        out.origins.push_back({src, a, b});
      }
    }
  }
  return out;
}

std::string_view policy_name(GroupingPolicy p) {
  return p == GroupingPolicy::round_robin ? "round_robin" : "random";
}

GroupingPolicy parse_grouping_policy(std::string_view name) {
  if (name == "round_robin") return GroupingPolicy::round_robin;
  if (name == "random") return GroupingPolicy::random;
  throw Error("unknown grouping policy '" + std::string(name) + "'");
}

std::vector<GroupMember> Grouping::a_set(std::size_t i, std::size_t k) const {
  std::vector<GroupMember> out;
  for (const GroupMember& g : groups.at(k)) {
    if (g.pair.left == i) out.push_back(g);
  }
  return out;
}

std::vector<GroupMember> Grouping::b_set(std::size_t j, std::size_t k) const {
  std::vector<GroupMember> out;
  for (const GroupMember& g : groups.at(k)) {
    if (g.pair.right == j) out.push_back(g);
  }
  return out;
}

Grouping group(const ExpandedSet& expanded, std::size_t r, GroupingPolicy policy,
               Rng* rng) {
  if (r == 0 || expanded.size() % r != 0) {
    throw ValidationError(ValidationIssue::groups_do_not_divide_blocks,
                          "r=" + std::to_string(r) + " does not divide |S~|=" +
                              std::to_string(expanded.size()));
  }
  std::vector<std::size_t> order(expanded.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (policy == GroupingPolicy::random) {
    if (rng == nullptr) throw Error("random grouping needs an rng");
    for (std::size_t t = order.size(); t > 1; --t) {
      std::swap(order[t - 1], order[uniform_residue(t, *rng)]);
    }
  }

  Grouping g;
  g.delta = expanded.size() / r;
  g.groups.resize(r);
  g.group_of.assign(expanded.size(), 0);
  for (std::size_t t = 0; t < order.size(); ++t) {
    const std::size_t idx = order[t];
    const std::size_t k = t % r;
    g.groups[k].push_back({idx, expanded.pairs[idx]});
    g.group_of[idx] = k;
  }
  return g;
}

ProtocolInstance make_instance(const SchemeParams& params, const DesiredSet& s,
                               GroupingPolicy policy, Rng& rng,
                               const ValidationOptions& opts) {
  validate(params, s, opts);
  ProtocolInstance inst{params, s, expand(s, params.m, params.n), {}};
  inst.grouping = group(inst.expanded, params.r, policy, &rng);
  return inst;
}

}  // namespace fpgmm
