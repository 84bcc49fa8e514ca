#include <doctest.h>

#include <algorithm>
#include <set>

#include "fpgmm/instance.hpp"

using namespace fpgmm;

namespace {

SchemeParams worked_params() {
  SchemeParams p;
  p.alpha = 2;
  p.lib_a = 2;
  p.lib_b = 2;
  p.m = 1;
  p.n = 2;
  p.r = 2;
  p.T = 1;
  p.N = 7;
  p.q = Modulus(13);
  return p;
}

bool has_issue(const SchemeParams& p, const DesiredSet& s, ValidationIssue issue) {
  for (const auto& e : check(p, s)) {
    if (e.issue() == issue) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("validation") {
  const DesiredSet s({{0, 0}, {0, 1}});
  CHECK(check(worked_params(), s).empty());
  CHECK_NOTHROW(validate(worked_params(), s));

  SchemeParams bad_r = worked_params();
  bad_r.m = bad_r.n = 1;
  bad_r.r = 3;
  CHECK(has_issue(bad_r, s, ValidationIssue::groups_do_not_divide_blocks));
  CHECK_THROWS_AS(validate(bad_r, s), ValidationError);

  SchemeParams tight = worked_params();
  tight.q = Modulus(7);  // |S|mn + N = 11 > 7
  CHECK(has_issue(tight, s, ValidationIssue::field_too_small));
  SchemeParams boundary = worked_params();
  boundary.N = 9;
  boundary.q = Modulus(13);  // 4 + 9 = 13 fits exactly
  CHECK_FALSE(has_issue(boundary, s, ValidationIssue::field_too_small));
  boundary.N = 10;  // q = |S|mn + N - 1
  CHECK(has_issue(boundary, s, ValidationIssue::field_too_small));

  SchemeParams few = worked_params();
  few.N = 6;
  CHECK(has_issue(few, s, ValidationIssue::too_few_workers));
  CHECK(check(few, s, {.require_enough_workers = false}).empty());

  CHECK(has_issue(worked_params(), DesiredSet{}, ValidationIssue::empty_desired_set));
  CHECK(has_issue(worked_params(), DesiredSet({{0, 0}, {0, 0}}),
                  ValidationIssue::duplicate_pair));
  CHECK(has_issue(worked_params(), DesiredSet({{2, 0}}), ValidationIssue::index_out_of_range));

  SchemeParams odd = worked_params();
  odd.alpha = 3;
  CHECK(has_issue(odd, s, ValidationIssue::partition_does_not_divide_alpha));
  SchemeParams zero = worked_params();
  zero.T = 0;
  CHECK(has_issue(zero, s, ValidationIssue::non_positive_parameter));
}

TEST_CASE("recovery threshold") {
  CHECK(recovery_threshold(worked_params(), 2) == 7);
  SchemeParams r1 = worked_params();
  r1.r = 1;
  CHECK(recovery_threshold(r1, 2) == 9);
}

TEST_CASE("expansion") {
  const auto id = expand(DesiredSet({{0, 0}}), 1, 1);
  REQUIRE(id.size() == 1);
  CHECK(id.pairs[0] == ProductIndex{0, 0});

  // A_1 B_{1,1}, A_1 B_{1,2}, A_1 B_{2,1}, A_1 B_{2,2}
  const auto ex = expand(DesiredSet({{0, 0}, {0, 1}}), 1, 2);
  const std::vector<ProductIndex> want{{0, 0}, {0, 1}, {0, 2}, {0, 3}};
  CHECK(ex.pairs == want);
  CHECK(ex.origins[2].source == ProductIndex{0, 1});
  CHECK(ex.origins[2].b == 0);
  CHECK(ex.origins[3].b == 1);

  // (2,1) with m=2 maps to rows m(i-1)+a, 1-based: (3,1), (4,1)
  const auto rows = expand(DesiredSet({{1, 0}}), 2, 1);
  CHECK(rows.pairs == std::vector<ProductIndex>{{2, 0}, {3, 0}});
  CHECK(to_string(rows.pairs[0]) == "3,1");
}

TEST_CASE("grouping") {
  const auto ex = expand(DesiredSet({{0, 0}, {0, 1}}), 1, 2);
  const auto single = group(ex, 1);
  REQUIRE(single.r() == 1);
  CHECK(single.groups[0].size() == 4);

  // Block-column grouping: {A_1 B_{1,1}, A_1 B_{2,1}} and {A_1 B_{1,2}, A_1 B_{2,2}}.
  const auto g = group(ex, 2);
  REQUIRE(g.r() == 2);
  CHECK(g.delta == 2);
  std::vector<ProductIndex> g0, g1;
  for (const auto& mem : g.groups[0]) g0.push_back(mem.pair);
  for (const auto& mem : g.groups[1]) g1.push_back(mem.pair);
  CHECK(g0 == std::vector<ProductIndex>{{0, 0}, {0, 2}});
  CHECK(g1 == std::vector<ProductIndex>{{0, 1}, {0, 3}});

  CHECK_THROWS_AS(group(ex, 3), ValidationError);
  CHECK_THROWS_AS(group(ex, 2, GroupingPolicy::random, nullptr), Error);
}

TEST_CASE("groupings partition the expanded set") {
  Rng rng(99);
  for (int t = 0; t < 50; ++t) {
    std::vector<ProductIndex> pairs;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (rng.next_u64() % 2) pairs.push_back({i, j});
      }
    }
    if (pairs.empty()) pairs.push_back({0, 0});
    const auto ex = expand(DesiredSet(pairs), 2, 2);
    for (std::size_t r : {1, 2, 4}) {
      const auto policy = t % 2 ? GroupingPolicy::random : GroupingPolicy::round_robin;
      const auto g = group(ex, r, policy, &rng);
      std::set<std::size_t> seen;
      for (std::size_t k = 0; k < g.r(); ++k) {
        CHECK(g.groups[k].size() == g.delta);
        for (const auto& mem : g.groups[k]) {
          CHECK(seen.insert(mem.index).second);
          CHECK(g.group_of[mem.index] == k);
          CHECK(ex.pairs[mem.index] == mem.pair);
        }
      }
      CHECK(seen.size() == ex.size());

      // A^k_i and B^k_j meet in at most the single pair (i, j).
      for (std::size_t k = 0; k < g.r(); ++k) {
        for (std::size_t i = 0; i < 6; ++i) {
          for (std::size_t j = 0; j < 6; ++j) {
            std::size_t common = 0;
            for (const auto& a : g.a_set(i, k)) {
              for (const auto& b : g.b_set(j, k)) common += a.index == b.index;
            }
            const bool member = std::any_of(g.groups[k].begin(), g.groups[k].end(),
                                            [&](const GroupMember& mem) {
                                              return mem.pair == ProductIndex{i, j};
                                            });
            CHECK(common == (member ? 1u : 0u));
          }
        }
      }
    }
  }
}

TEST_CASE("policy names round trip") {
  CHECK(parse_grouping_policy("round_robin") == GroupingPolicy::round_robin);
  CHECK(parse_grouping_policy(policy_name(GroupingPolicy::random)) == GroupingPolicy::random);
  CHECK_THROWS_AS(parse_grouping_policy("by_row"), Error);
}
