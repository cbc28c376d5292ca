#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tutte/subset.hpp"

namespace tutte {

/// Hot inner loops of the rank-table and genus-2 engines. Every entry has a
/// scalar reference implementation plus optional SIMD variants selected at
/// runtime; all variants are bit-exact equivalents (integer arithmetic only).
struct KernelOps {
  const char* name;

  /// Packed genus-2 profile keys for a block of A2 values at fixed A1.
  ///
  /// Key layout (little-endian bytes, one per canonical genus-2 variable):
  ///   byte 0: rank(E)-rank(A1)      byte 1: |A1|-rank(A1)     (caller ORs in)
  ///   byte 2: rank(E)-rank(A2)      byte 3: |A2|-rank(A2)
  ///   byte 4: rank(E)-rank(A1&A2)   byte 5: |A1&A2|-rank(A1&A2)
  ///   byte 6: rank(E)-rank(A1|A2)   byte 7: |A1|A2|-rank(A1|A2)
  ///
  /// Fills bytes 2..7 of out[i] for A2 = a2_begin + i, i in [0, count).
  /// rt must stay readable for 2^n + 8 bytes (gather variants over-read).
  void (*genus2_keys)(const std::uint8_t* rt, unsigned n, unsigned full_rank,
                      SubsetMask a1, SubsetMask a2_begin, std::uint32_t count,
                      std::uint64_t* out);

  /// out[k] = max_j popcount((m_begin + k) & bases[j]) — the rank of mask
  /// m_begin + k in the matroid generated by `bases`. n_bases >= 1.
  void (*max_overlap)(const SubsetMask* bases, std::size_t n_bases,
                      SubsetMask m_begin, std::uint32_t count,
                      std::uint8_t* out);
};

const KernelOps& scalar_kernels();

/// AVX2 variants, or nullptr when the build or the CPU lacks them.
const KernelOps* avx2_kernels();

/// Fastest available variant for this process.
const KernelOps& best_kernels();

/// Every usable variant, scalar first. Used by equivalence tests.
std::vector<const KernelOps*> available_kernels();

}  // namespace tutte
