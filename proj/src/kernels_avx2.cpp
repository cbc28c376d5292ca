// AVX2 variants of the hot kernels. This translation unit is compiled with
// -mavx2 and only linked on x86-64 builds; callers must gate on runtime CPU
// support (see kernels_dispatch.cpp).

#include <immintrin.h>

#include "tutte/kernels.hpp"

namespace tutte {

const KernelOps& avx2_kernel_table();

namespace {

// Per-32-bit-lane popcount via the nibble LUT trick.
inline __m256i popcnt_epi32(__m256i v) {
  const __m256i lut =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1,
                       2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low4 = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low4);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low4);
  const __m256i per_byte = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                           _mm256_shuffle_epi8(lut, hi));
  const __m256i per_u16 = _mm256_maddubs_epi16(per_byte, _mm256_set1_epi8(1));
  return _mm256_madd_epi16(per_u16, _mm256_set1_epi16(1));
}

// Gathers one rank byte per lane; reads 4 bytes per lane, so the table must
// be padded (the KernelOps contract requires 2^n + 8 readable bytes).
inline __m256i gather_rank_u8(const std::uint8_t* rt, __m256i idx) {
  const __m256i raw =
      _mm256_i32gather_epi32(reinterpret_cast<const int*>(rt), idx, 1);
  return _mm256_and_si256(raw, _mm256_set1_epi32(0xff));
}

void genus2_keys_avx2(const std::uint8_t* rt, unsigned n, unsigned full_rank,
                      SubsetMask a1, SubsetMask a2_begin, std::uint32_t count,
                      std::uint64_t* out) {
  const __m256i rank = _mm256_set1_epi32(static_cast<int>(full_rank));
  const __m256i va1 = _mm256_set1_epi32(static_cast<int>(a1));
  const __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);

  std::uint32_t k = 0;
  for (; k + 8 <= count; k += 8) {
    const __m256i a2 =
        _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(a2_begin + k)), iota);
    const __m256i both = _mm256_and_si256(va1, a2);
    const __m256i either = _mm256_or_si256(va1, a2);

    const __m256i r2 = gather_rank_u8(rt, a2);
    const __m256i ri = gather_rank_u8(rt, both);
    const __m256i ru = gather_rank_u8(rt, either);
    const __m256i p2 = popcnt_epi32(a2);
    const __m256i pi = popcnt_epi32(both);
    const __m256i pu = popcnt_epi32(either);

    const __m256i c2 = _mm256_sub_epi32(rank, r2);
    const __m256i v2 = _mm256_sub_epi32(p2, r2);
    const __m256i ci = _mm256_sub_epi32(rank, ri);
    const __m256i vi = _mm256_sub_epi32(pi, ri);
    const __m256i cu = _mm256_sub_epi32(rank, ru);
    const __m256i vu = _mm256_sub_epi32(pu, ru);

    // Low key half: bytes 2..3, high half: bytes 4..7.
    const __m256i lo = _mm256_or_si256(_mm256_slli_epi32(c2, 16),
                                       _mm256_slli_epi32(v2, 24));
    const __m256i hi = _mm256_or_si256(
        _mm256_or_si256(ci, _mm256_slli_epi32(vi, 8)),
        _mm256_or_si256(_mm256_slli_epi32(cu, 16), _mm256_slli_epi32(vu, 24)));

    // Interleave 32-bit halves into 64-bit keys in lane order.
    const __m256i t0 = _mm256_unpacklo_epi32(lo, hi);  // k0 k1 | k4 k5
    const __m256i t1 = _mm256_unpackhi_epi32(lo, hi);  // k2 k3 | k6 k7
    const __m256i out0 = _mm256_permute2x128_si256(t0, t1, 0x20);
    const __m256i out1 = _mm256_permute2x128_si256(t0, t1, 0x31);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k), out0);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k + 4), out1);
  }
  if (k < count) {
    scalar_kernels().genus2_keys(rt, n, full_rank, a1, a2_begin + k, count - k,
                                 out + k);
  }
}

void max_overlap_avx2(const SubsetMask* bases, std::size_t n_bases,
                      SubsetMask m_begin, std::uint32_t count,
                      std::uint8_t* out) {
  const __m256i iota = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  std::uint32_t k = 0;
  for (; k + 8 <= count; k += 8) {
    const __m256i m =
        _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(m_begin + k)), iota);
    __m256i best = _mm256_setzero_si256();
    for (std::size_t j = 0; j < n_bases; ++j) {
      const __m256i b = _mm256_set1_epi32(static_cast<int>(bases[j]));
      best = _mm256_max_epu32(best, popcnt_epi32(_mm256_and_si256(m, b)));
    }
    alignas(32) std::uint32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
    for (unsigned lane = 0; lane < 8; ++lane) {
      out[k + lane] = static_cast<std::uint8_t>(lanes[lane]);
    }
  }
  if (k < count) {
    scalar_kernels().max_overlap(bases, n_bases, m_begin + k, count - k, out + k);
  }
}

}  // namespace

const KernelOps& avx2_kernel_table() {
  static const KernelOps ops{"avx2", &genus2_keys_avx2, &max_overlap_avx2};
  return ops;
}

}  // namespace tutte
