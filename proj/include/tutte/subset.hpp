#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "tutte/errors.hpp"

namespace tutte {

/// A subset of the ground set {1..n}: element e is stored as bit e-1.
using SubsetMask = std::uint32_t;

/// Hard capacity of every matroid in this library. A full rank table
/// (one byte per subset) then tops out at 16 MiB and any mask fits in a
/// machine word.
inline constexpr unsigned kMaxGroundSize = 24;

constexpr SubsetMask full_mask(unsigned n) { return (SubsetMask{1} << n) - 1; }

constexpr SubsetMask element_bit(unsigned element) {
  return SubsetMask{1} << (element - 1);
}

constexpr bool mask_contains(SubsetMask a, unsigned element) {
  return (a >> (element - 1)) & 1u;
}

constexpr unsigned popcount(SubsetMask a) {
  return static_cast<unsigned>(std::popcount(a));
}

/// Elements of a mask, ascending, 1-based.
inline std::vector<unsigned> mask_elements(SubsetMask a) {
  std::vector<unsigned> out;
  out.reserve(popcount(a));
  while (a != 0) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(a));
    out.push_back(bit + 1);
    a &= a - 1;
  }
  return out;
}

/// Builds a mask from 1-based elements, checking range and duplicates.
inline SubsetMask mask_from_elements(const std::vector<unsigned>& elements,
                                     unsigned n) {
  SubsetMask a = 0;
  for (unsigned e : elements) {
    if (e < 1 || e > n) {
      throw ValidationError("element " + std::to_string(e) +
                            " is outside the ground set {1.." +
                            std::to_string(n) + "}");
    }
    const SubsetMask bit = element_bit(e);
    if (a & bit) {
      throw ValidationError("element " + std::to_string(e) +
                            " listed more than once");
    }
    a |= bit;
  }
  return a;
}

inline std::string mask_to_string(SubsetMask a) {
  std::string s = "{";
  bool first = true;
  for (unsigned e : mask_elements(a)) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  s += "}";
  return s;
}

/// Next mask with the same popcount (Gosper's hack); v must be nonzero.
constexpr SubsetMask next_same_popcount(SubsetMask v) {
  const SubsetMask c = v & (0u - v);
  const SubsetMask r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

/// All k-subsets of {1..n} in ascending mask order.
inline std::vector<SubsetMask> all_ksubsets(unsigned n, unsigned k) {
  std::vector<SubsetMask> out;
  if (k > n) return out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  const SubsetMask limit = full_mask(n);
  SubsetMask v = full_mask(k);
  while (v <= limit) {
    out.push_back(v);
    if (v == limit) break;
    v = next_same_popcount(v);
  }
  return out;
}

}  // namespace tutte
