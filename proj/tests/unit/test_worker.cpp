#include <doctest.h>

#include "fpgmm/worker.hpp"
#include "oracles.hpp"

using namespace fpgmm;

namespace {

struct Libraries {
  std::vector<BlockMatrix> a, b;
};

Libraries random_libraries(Modulus q, std::size_t alpha, std::size_t la, std::size_t lb,
                           Rng& rng) {
  Libraries lib;
  for (std::size_t i = 0; i < la; ++i) lib.a.push_back(BlockMatrix::random(q, alpha, alpha, rng));
  for (std::size_t j = 0; j < lb; ++j) lib.b.push_back(BlockMatrix::random(q, alpha, alpha, rng));
  return lib;
}

Query blank_query(std::size_t m, std::size_t n, std::size_t r, std::size_t la, std::size_t lb) {
  Query q;
  q.m = m;
  q.n = n;
  q.r = r;
  q.rows_a = m * la;
  q.rows_b = n * lb;
  q.a_evals.assign(q.rows_a * r, 0);
  q.b_evals.assign(q.rows_b * r, 0);
  return q;
}

}  // namespace

TEST_CASE("library splitting follows the block re-indexing") {
  Rng rng(1);
  const Modulus q(13);
  const auto lib = random_libraries(q, 4, 2, 2, rng);
  const auto as = split_library_a(lib.a, 2);
  REQUIRE(as.size() == 4);
  CHECK(as[3] == partition_rows(lib.a[1], 2)[1]);
  const auto bs = split_library_b(lib.b, 2);
  REQUIRE(bs.size() == 4);
  CHECK(bs[2] == partition_cols(lib.b[1], 2)[0]);
  CHECK(hconcat(std::span(bs).subspan(0, 2)) == lib.b[0]);
}

TEST_CASE("zero and basis queries") {
  Rng rng(2);
  const Modulus q(2147483647ULL);
  const auto lib = random_libraries(q, 4, 2, 2, rng);
  auto query = blank_query(1, 2, 2, 2, 2);
  auto out = respond(lib.a, lib.b, query);
  CHECK(out.U == BlockMatrix(q, 4, 2));

  // a_{1,1} = c selects c * A~_1 into A^_1.
  const u64 c = 31337;
  query.a_evals[0] = c;
  const auto enc = encode_libraries(lib.a, lib.b, query);
  CHECK(enc.a_hat[0] == scale(lib.a[0], c));
  CHECK(enc.a_hat[1] == BlockMatrix(q, 4, 4));

  // r = 1 with unit evaluations on A~_1 and B~_1: U = A~_1 B~_1.
  auto unit = blank_query(1, 2, 1, 2, 2);
  unit.a_evals[0] = 1;
  unit.b_evals[0] = 1;
  const auto u = respond(lib.a, lib.b, unit);
  CHECK(u.U == oracle::matmul(lib.a[0], split_library_b(lib.b, 2)[0]));
}

TEST_CASE("response is the sum over groups of encoded products") {
  Rng rng(3);
  const Modulus q(2147483647ULL);
  const auto lib = random_libraries(q, 4, 2, 2, rng);
  auto query = blank_query(1, 2, 2, 2, 2);
  for (auto& v : query.a_evals) v = uniform_residue(q.value(), rng);
  for (auto& v : query.b_evals) v = uniform_residue(q.value(), rng);
  const auto out = respond(lib.a, lib.b, query);

  const auto as = split_library_a(lib.a, 1), bs = split_library_b(lib.b, 2);
  BlockMatrix want(q, 4, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    BlockMatrix ah(q, 4, 4), bh(q, 4, 2);
    for (std::size_t i = 0; i < as.size(); ++i) ah = add(ah, scale(as[i], query.a_eval(i, k)));
    for (std::size_t j = 0; j < bs.size(); ++j) bh = add(bh, scale(bs[j], query.b_eval(j, k)));
    want = add(want, oracle::matmul(ah, bh));
  }
  CHECK(out.U == want);
  CHECK(out.mul_count == 64);  // r * (alpha/m) * alpha * (alpha/n) = 2*4*4*2
}

TEST_CASE("shape mismatches are rejected") {
  Rng rng(4);
  const Modulus q(13);
  const auto lib = random_libraries(q, 4, 2, 2, rng);
  CHECK_THROWS_AS(respond(lib.a, lib.b, blank_query(1, 2, 2, 3, 2)), DimensionMismatch);
  CHECK_THROWS_AS(respond(lib.a, lib.b, blank_query(3, 1, 1, 2, 2)), DimensionMismatch);
}
