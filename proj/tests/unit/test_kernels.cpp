#include <doctest.h>

#include <vector>

#include "fpgmm/kernels.hpp"
#include "fpgmm/matrix.hpp"
#include "oracles.hpp"

using namespace fpgmm;
namespace k = fpgmm::kernels;

namespace {

std::vector<u64> random_entries(std::size_t count, u64 q, Rng& rng) {
  std::vector<u64> v(count);
  for (auto& x : v) x = uniform_residue(q, rng);
  return v;
}

// Moduli exercising small, mid and boundary cases for the 31-bit SIMD path.
const u64 kModuli[] = {2, 3, 13, 65537, 1000003, 2147483647ULL};

}  // namespace

TEST_CASE("scalar matmul matches the naive oracle") {
  Rng rng(1);
  for (u64 q : {u64{13}, u64{2147483647ULL}, u64{18446744073709551557ULL}}) {
    for (int t = 0; t < 20; ++t) {
      const std::size_t r = 1 + rng.next_u64() % 9, in = 1 + rng.next_u64() % 9,
                        c = 1 + rng.next_u64() % 9;
      const auto a = random_entries(r * in, q, rng), b = random_entries(in * c, q, rng);
      std::vector<u64> out(r * c);
      k::scalar_kernels().matmul(a.data(), b.data(), out.data(), r, in, c, q);
      CHECK(out == oracle::matmul(a, b, r, in, c, q));
    }
  }
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
  const k::KernelSet* simd = k::avx2_kernels();
  if (simd == nullptr) {
    MESSAGE("AVX2 unavailable on this build or CPU; equivalence not exercised");
    return;
  }
  CHECK(simd->handles(2147483647ULL));
  CHECK_FALSE(simd->handles(4294967311ULL));
  Rng rng(77);
  for (u64 q : kModuli) {
    for (int t = 0; t < 40; ++t) {
      // Odd sizes hit the vector tails; long inner dimensions hit the lazy fold.
      const std::size_t r = 1 + rng.next_u64() % 7;
      const std::size_t in = 1 + rng.next_u64() % (t % 4 == 0 ? 700 : 17);
      const std::size_t c = 1 + rng.next_u64() % 21;
      const auto a = random_entries(r * in, q, rng), b = random_entries(in * c, q, rng);
      std::vector<u64> s(r * c), v(r * c);
      k::scalar_kernels().matmul(a.data(), b.data(), s.data(), r, in, c, q);
      simd->matmul(a.data(), b.data(), v.data(), r, in, c, q);
      CHECK(s == v);

      const std::size_t count = 1 + rng.next_u64() % 40, len = 1 + rng.next_u64() % 37;
      const auto coeffs = random_entries(count, q, rng);
      std::vector<std::vector<u64>> inputs;
      std::vector<const u64*> ptrs;
      for (std::size_t i = 0; i < count; ++i) inputs.push_back(random_entries(len, q, rng));
      for (const auto& in_vec : inputs) ptrs.push_back(in_vec.data());
      std::vector<u64> ls(len), lv(len);
      k::scalar_kernels().lincomb(ls.data(), coeffs.data(), ptrs.data(), count, len, q);
      simd->lincomb(lv.data(), coeffs.data(), ptrs.data(), count, len, q);
      CHECK(ls == lv);
    }
  }
}

TEST_CASE("worst-case operands do not overflow the lazy accumulator") {
  const k::KernelSet* simd = k::avx2_kernels();
  if (simd == nullptr) return;
  const u64 q = 2147483647ULL;
  const std::size_t in = 4099;
  std::vector<u64> a(3 * in, q - 1), b(in * 5, q - 1);
  std::vector<u64> s(15), v(15);
  k::scalar_kernels().matmul(a.data(), b.data(), s.data(), 3, in, 5, q);
  simd->matmul(a.data(), b.data(), v.data(), 3, in, 5, q);
  CHECK(s == v);
  CHECK(s[0] == in % q);  // (-1)(-1) summed in times
}

TEST_CASE("dispatch honours forcing and falls back for wide moduli") {
  k::force_isa(k::Isa::scalar);
  CHECK(k::select_kernels(13).isa == k::Isa::scalar);
  k::force_isa(k::Isa::avx2);
  CHECK(k::select_kernels(18446744073709551557ULL).isa == k::Isa::scalar);
  if (k::avx2_kernels() != nullptr) CHECK(k::select_kernels(13).isa == k::Isa::avx2);
  k::force_isa(std::nullopt);
  CHECK_FALSE(k::forced_isa().has_value());

  // A library-level product agrees whichever variant is chosen.
  Rng rng(3);
  const Modulus q(1000003);
  const auto a = BlockMatrix::random(q, 6, 33, rng), b = BlockMatrix::random(q, 33, 10, rng);
  k::force_isa(k::Isa::scalar);
  const auto ps = matmul(a, b);
  k::force_isa(k::Isa::avx2);
  const auto pv = matmul(a, b);
  k::force_isa(std::nullopt);
  CHECK(ps == pv);
  CHECK(ps == oracle::matmul(a, b));
}
