#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "fpgmm/errors.hpp"

namespace fpgmm {

using u64 = std::uint64_t;

bool is_prime(u64 n);

/// A prime modulus q. Construction fails unless q is prime.
class Modulus {
 public:
  static constexpr u64 kDefault = 2147483647ULL;  // 2^31 - 1

  explicit Modulus(u64 q = kDefault);

  u64 value() const { return q_; }

  u64 reduce(u64 v) const { return v % q_; }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    // a, b < q < 2^64 but the sum may wrap
    if (s < a || s >= q_) s -= q_;
    return s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (q_ - b); }
  u64 neg(u64 a) const { return a == 0 ? 0 : q_ - a; }
  u64 mul(u64 a, u64 b) const {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % q_);
  }
  u64 pow(u64 base, u64 exp) const;
  /// Multiplicative inverse by extended Euclid. Throws DivisionByZero on 0.
  u64 inv(u64 a) const;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  u64 q_;
};

/// An element of GF(q). Always fully reduced; never combines across moduli.
class FieldElement {
 public:
  FieldElement(Modulus q, u64 v) : value_(q.reduce(v)), q_(q) {}

  static FieldElement zero(Modulus q) { return {q, 0}; }
  static FieldElement one(Modulus q) { return {q, 1}; }

  u64 value() const { return value_; }
  Modulus modulus() const { return q_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement inv() const { return {q_, q_.inv(value_), Reduced{}}; }
  FieldElement pow(u64 e) const { return {q_, q_.pow(value_, e), Reduced{}}; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.q_, a.q_.add(a.value_, b.value_), Reduced{}};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.q_, a.q_.sub(a.value_, b.value_), Reduced{}};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.q_, a.q_.mul(a.value_, b.value_), Reduced{}};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inv();
  }
  FieldElement operator-() const { return {q_, q_.neg(value_), Reduced{}}; }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return a.value_ == b.value_;
  }

 private:
  struct Reduced {};
  FieldElement(Modulus q, u64 v, Reduced) : value_(v), q_(q) {}

  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!(a.q_ == b.q_)) {
      throw ModulusMismatch("field elements from GF(" +
                            std::to_string(a.q_.value()) + ") and GF(" +
                            std::to_string(b.q_.value()) + ")");
    }
  }

  u64 value_;
  Modulus q_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

/// Seedable deterministic generator. Single owner; use split() to hand
/// independent streams to parallel code.
class Rng {
 public:
  explicit Rng(u64 seed) : engine_(seed), seed_(seed) {}

  u64 next_u64() { return engine_(); }
  u64 seed() const { return seed_; }

  /// Independent child stream derived from (seed, tag).
  Rng split(u64 tag) const;

 private:
  std::mt19937_64 engine_;
  u64 seed_;
};

u64 splitmix64(u64 x);

/// Uniform residue in [0, q) by rejection on the 64-bit word stream.
u64 uniform_residue(u64 q, Rng& rng);

FieldElement sample_uniform(Modulus q, Rng& rng);

/// `count` pairwise distinct residues, none in `exclude`, in draw order.
std::vector<FieldElement> sample_distinct(Modulus q, std::size_t count,
                                          const std::set<u64>& exclude,
                                          Rng& rng);

}  // namespace fpgmm
