#include <algorithm>
#include <bit>

#include "tutte/kernels.hpp"

namespace tutte {

namespace {

void genus2_keys_scalar(const std::uint8_t* rt, unsigned n, unsigned full_rank,
                        SubsetMask a1, SubsetMask a2_begin, std::uint32_t count,
                        std::uint64_t* out) {
  (void)n;
  const std::uint64_t rank = full_rank;
  for (std::uint32_t k = 0; k < count; ++k) {
    const SubsetMask a2 = a2_begin + k;
    const SubsetMask both = a1 & a2;
    const SubsetMask either = a1 | a2;
    const std::uint64_t r2 = rt[a2];
    const std::uint64_t ri = rt[both];
    const std::uint64_t ru = rt[either];
    const std::uint64_t p2 = static_cast<unsigned>(std::popcount(a2));
    const std::uint64_t pi = static_cast<unsigned>(std::popcount(both));
    const std::uint64_t pu = static_cast<unsigned>(std::popcount(either));
    out[k] = ((rank - r2) << 16) | ((p2 - r2) << 24) | ((rank - ri) << 32) |
             ((pi - ri) << 40) | ((rank - ru) << 48) | ((pu - ru) << 56);
  }
}

void max_overlap_scalar(const SubsetMask* bases, std::size_t n_bases,
                        SubsetMask m_begin, std::uint32_t count,
                        std::uint8_t* out) {
  for (std::uint32_t k = 0; k < count; ++k) {
    const SubsetMask m = m_begin + k;
    unsigned best = 0;
    for (std::size_t j = 0; j < n_bases; ++j) {
      best = std::max(best, static_cast<unsigned>(std::popcount(m & bases[j])));
    }
    out[k] = static_cast<std::uint8_t>(best);
  }
}

}  // namespace

const KernelOps& scalar_kernels() {
  static const KernelOps ops{"scalar", &genus2_keys_scalar, &max_overlap_scalar};
  return ops;
}

}  // namespace tutte
