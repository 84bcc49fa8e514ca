#include "fpgmm/field.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace fpgmm {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

// Deterministic Miller-Rabin; these bases are exact for every n < 2^64.
bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Modulus::Modulus(u64 q) : q_(q) {
  if (!is_prime(q)) {
    throw Error("field modulus " + std::to_string(q) + " is not prime");
  }
}

u64 Modulus::pow(u64 base, u64 exp) const { return powmod(base, exp, q_); }

u64 Modulus::inv(u64 a) const {
  a %= q_;
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
  // Extended Euclid on signed 128-bit to stay exact for q near 2^64.
  __int128 t = 0, new_t = 1;
  __int128 r = q_, new_r = a;
  while (new_r != 0) {
    __int128 quot = r / new_r;
    __int128 tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q_;
  return static_cast<u64>(t);
}

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement inv(const FieldElement& a) { return a.inv(); }

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::split(u64 tag) const { return Rng(splitmix64(seed_ ^ splitmix64(tag))); }

u64 uniform_residue(u64 q, Rng& rng) {
  // Accept words below the largest multiple of q that fits in 2^64.
  const u64 rem = (~u64{0} % q + 1) % q;  // 2^64 mod q
  const u64 limit = ~u64{0} - rem;         // accept w <= limit
  for (;;) {
    u64 w = rng.next_u64();
    if (rem == 0 || w <= limit) return w % q;
  }
}

FieldElement sample_uniform(Modulus q, Rng& rng) {
  return FieldElement(q, uniform_residue(q.value(), rng));
}

std::vector<FieldElement> sample_distinct(Modulus q, std::size_t count,
                                          const std::set<u64>& exclude,
                                          Rng& rng) {
  const u64 qv = q.value();
  std::size_t excluded_in_field = 0;
  for (u64 e : exclude) {
    if (e < qv) ++excluded_in_field;
  }
  if (count > qv || count + excluded_in_field > qv) {
    throw InsufficientField("cannot draw " + std::to_string(count) +
                            " distinct elements from GF(" + std::to_string(qv) +
                            ") excluding " + std::to_string(excluded_in_field));
  }

  std::vector<FieldElement> out;
  out.reserve(count);
  const u64 available = qv - excluded_in_field;

  // Dense case: partial Fisher-Yates over the explicit pool.
  if (available <= (u64{1} << 16) || count * 2 > available) {
    std::vector<u64> pool;
    pool.reserve(available);
    for (u64 v = 0; v < qv; ++v) {
      if (!exclude.contains(v)) pool.push_back(v);
    }
    for (std::size_t i = 0; i < count; ++i) {
      u64 j = i + uniform_residue(pool.size() - i, rng);
      std::swap(pool[i], pool[j]);
      out.emplace_back(q, pool[i]);
    }
    return out;
  }

  std::unordered_set<u64> seen;
  while (out.size() < count) {
    u64 v = uniform_residue(qv, rng);
    if (exclude.contains(v) || !seen.insert(v).second) continue;
    out.emplace_back(q, v);
  }
  return out;
}

}  // namespace fpgmm
