#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpgmm/field.hpp"

namespace fpgmm {

// Library indices are 0-based throughout the library; configs and reports use
// 1-based indices and convert at the boundary.
struct ProductIndex {
  std::size_t left;
  std::size_t right;
  friend auto operator<=>(const ProductIndex&, const ProductIndex&) = default;
};

std::string to_string(const ProductIndex& p);  // 1-based "i,j"

struct SchemeParams {
  std::size_t alpha = 0;      // side length of every library matrix
  std::size_t lib_a = 0;      // L_A
  std::size_t lib_b = 0;      // L_B
  std::size_t m = 1;          // row bands per A matrix
  std::size_t n = 1;          // column bands per B matrix
  std::size_t r = 1;          // number of groups
  std::size_t T = 1;          // collusion tolerance
  std::size_t N = 0;          // workers
  Modulus q{Modulus::kDefault};
};

/// The requested products. Kept sorted; duplicates are retained so that
/// validation can report them.
class DesiredSet {
 public:
  DesiredSet() = default;
  explicit DesiredSet(std::vector<ProductIndex> pairs);

  const std::vector<ProductIndex>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

 private:
  std::vector<ProductIndex> pairs_;
};

enum class ValidationIssue {
  empty_desired_set,
  index_out_of_range,
  duplicate_pair,
  non_positive_parameter,
  partition_does_not_divide_alpha,
  groups_do_not_divide_blocks,
  field_too_small,
  too_few_workers,
};

std::string_view issue_name(ValidationIssue issue);

class ValidationError : public Error {
 public:
  ValidationError(ValidationIssue issue, const std::string& detail)
      : Error(std::string(issue_name(issue)) + ": " + detail), issue_(issue) {}
  ValidationIssue issue() const { return issue_; }

 private:
  ValidationIssue issue_;
};

struct ValidationOptions {
  // Privacy analysis only looks at queries; decodability (N >= R) is moot.
  bool require_enough_workers = true;
};

/// Every violated constraint, in a fixed order.
std::vector<ValidationError> check(const SchemeParams& params,
                                   const DesiredSet& s,
                                   const ValidationOptions& opts = {});

/// Throws the first violation from check().
void validate(const SchemeParams& params, const DesiredSet& s,
              const ValidationOptions& opts = {});

/// Recovery threshold ((r+1)/r)|S|mn + 2T - 1.
std::size_t recovery_threshold(const SchemeParams& params, std::size_t s_size);

/// Where an expanded pair came from: A_{source.left, a} * B_{source.right, b}.
struct BlockOrigin {
  ProductIndex source;
  std::size_t a;
  std::size_t b;
};

struct ExpandedSet {
  std::vector<ProductIndex> pairs;   // canonical order
  std::vector<BlockOrigin> origins;  // parallel to pairs
  std::size_t m = 1;
  std::size_t n = 1;

  std::size_t size() const { return pairs.size(); }
  std::optional<std::size_t> index_of(const ProductIndex& p) const;
};

/// Re-indexes S into block products (m*i + a, n*j + b), ordered by
/// (rank of (i, j) in S, a, b).
ExpandedSet expand(const DesiredSet& s, std::size_t m, std::size_t n);

enum class GroupingPolicy { round_robin, random };
std::string_view policy_name(GroupingPolicy p);
GroupingPolicy parse_grouping_policy(std::string_view name);

struct GroupMember {
  std::size_t index;  // position in the expanded set
  ProductIndex pair;
};

struct Grouping {
  std::vector<std::vector<GroupMember>> groups;
  std::vector<std::size_t> group_of;  // expanded index -> group
  std::size_t delta = 0;

  std::size_t r() const { return groups.size(); }
  /// Members of group k whose left index is i.
  std::vector<GroupMember> a_set(std::size_t i, std::size_t k) const;
  /// Members of group k whose right index is j.
  std::vector<GroupMember> b_set(std::size_t j, std::size_t k) const;
};

/// Round robin sends canonical element t to group t mod r; random shuffles
/// with `rng` first. Throws ValidationError if r does not divide |expanded|.
Grouping group(const ExpandedSet& expanded, std::size_t r,
               GroupingPolicy policy = GroupingPolicy::round_robin,
               Rng* rng = nullptr);

/// Validated params together with S, its expansion and grouping.
struct ProtocolInstance {
  SchemeParams params;
  DesiredSet desired;
  ExpandedSet expanded;
  Grouping grouping;

  std::size_t threshold() const { return recovery_threshold(params, desired.size()); }
};

ProtocolInstance make_instance(const SchemeParams& params, const DesiredSet& s,
                               GroupingPolicy policy, Rng& rng,
                               const ValidationOptions& opts = {});

}  // namespace fpgmm
