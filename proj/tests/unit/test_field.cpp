#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fpgmm/field.hpp"
#include "oracles.hpp"

using namespace fpgmm;

TEST_CASE("primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK(is_prime(2147483647ULL));
  CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));  // Carmichael
  CHECK_FALSE(is_prime(3215031751ULL));
  CHECK_THROWS_AS(Modulus(12), Error);
}

TEST_CASE("hand examples") {
  const Modulus q7(7);
  CHECK(q7.add(3, 5) == 1);
  CHECK(q7.mul(3, 5) == 1);
  CHECK(q7.inv(1) == 1);
  CHECK(q7.inv(2) == oracle::brute_inverse(2, 7));
  CHECK(q7.inv(2) == 4);
  CHECK_THROWS_AS(q7.inv(0), DivisionByZero);
  const FieldElement x(q7, 6);
  CHECK((FieldElement::zero(q7) + x) == x);
  CHECK((x + FieldElement(q7, 1)).is_zero());
  CHECK((FieldElement::one(q7) * x) == x);
  CHECK((FieldElement::zero(q7) * x).is_zero());
  CHECK_THROWS_AS(FieldElement(q7, 0).inv(), DivisionByZero);
}

TEST_CASE("field axioms hold exhaustively on small primes") {
  for (u64 p : {2, 3, 5, 7, 11, 13}) {
    const Modulus q(p);
    for (u64 a = 0; a < p; ++a) {
      for (u64 b = 0; b < p; ++b) {
        CHECK(q.add(a, b) == (a + b) % p);
        CHECK(q.mul(a, b) == a * b % p);
        CHECK(q.add(q.sub(a, b), b) == a);
        for (u64 c = 0; c < p; ++c) {
          CHECK(q.mul(a, q.add(b, c)) == q.add(q.mul(a, b), q.mul(a, c)));
          CHECK(q.mul(q.mul(a, b), c) == q.mul(a, q.mul(b, c)));
        }
      }
      CHECK(q.add(a, q.neg(a)) == 0);
      if (a != 0) {
        CHECK(q.inv(a) == oracle::brute_inverse(a, p));
        CHECK(q.mul(a, q.inv(a)) == 1);
      }
    }
  }
}

TEST_CASE("large modulus arithmetic agrees with 128-bit oracle") {
  const Modulus q(18446744073709551557ULL);
  Rng rng(5);
  for (int t = 0; t < 2000; ++t) {
    const u64 a = uniform_residue(q.value(), rng);
    const u64 b = uniform_residue(q.value(), rng);
    CHECK(q.add(a, b) ==
          static_cast<u64>((static_cast<unsigned __int128>(a) + b) % q.value()));
    CHECK(q.mul(a, b) == oracle::mulmod(a, b, q.value()));
    if (a != 0) CHECK(q.inv(a) == oracle::invmod(a, q.value()));
  }
}

TEST_CASE("mixing moduli is rejected") {
  const FieldElement a(Modulus(7), 3);
  const FieldElement b(Modulus(11), 3);
  CHECK_THROWS_AS(a + b, ModulusMismatch);
  CHECK_THROWS_AS(a * b, ModulusMismatch);
  CHECK_THROWS_AS((void)(a == b), ModulusMismatch);
}

TEST_CASE("rng is deterministic and splits are independent streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c = Rng(42).split(1), d = Rng(42).split(2), e = Rng(42).split(1);
  const u64 first = c.next_u64();
  CHECK(first != d.next_u64());
  CHECK(first == e.next_u64());
}

TEST_CASE("uniform sampling: range and chi-square") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) CHECK(sample_uniform(Modulus(2), rng).value() <= 1);

  // Each bin within 5 sigma of the binomial mean.
  constexpr u64 kQ = 11;
  constexpr int kDraws = 1'000'000;
  std::vector<int> bins(kQ, 0);
  for (int i = 0; i < kDraws; ++i) ++bins[uniform_residue(kQ, rng)];
  const double p = 1.0 / kQ;
  const double mean = kDraws * p;
  const double sigma = std::sqrt(kDraws * p * (1 - p));
  double chi2 = 0;
  for (int c : bins) {
    CHECK(std::abs(c - mean) < 5 * sigma);
    chi2 += (c - mean) * (c - mean) / mean;
  }
  // 10 degrees of freedom; 0.999 quantile is about 29.6.
  CHECK(chi2 < 29.6);
}

TEST_CASE("sample_distinct") {
  Rng rng(9);
  SUBCASE("count = q gives a permutation") {
    const auto v = sample_distinct(Modulus(13), 13, {}, rng);
    std::set<u64> seen;
    for (const auto& e : v) seen.insert(e.value());
    CHECK(seen.size() == 13);
  }
  SUBCASE("exclusions respected") {
    for (int t = 0; t < 10'000; ++t) {
      const auto v = sample_distinct(Modulus(5), 3, {0}, rng);
      std::set<u64> seen;
      for (const auto& e : v) {
        CHECK(e.value() != 0);
        seen.insert(e.value());
      }
      CHECK(seen.size() == 3);
    }
  }
  SUBCASE("large field uses the rejection path") {
    const std::set<u64> exclude{1, 2, 3};
    const auto v = sample_distinct(Modulus(), 1000, exclude, rng);
    std::set<u64> seen;
    for (const auto& e : v) {
      CHECK_FALSE(exclude.contains(e.value()));
      seen.insert(e.value());
    }
    CHECK(seen.size() == 1000);
  }
  SUBCASE("capacity violation") {
    CHECK_THROWS_AS(sample_distinct(Modulus(7), 5, {0, 1, 2}, rng), InsufficientField);
  }
}
