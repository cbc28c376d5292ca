#include "tutte/kernels.hpp"

namespace tutte {

#if defined(TUTTE_HAVE_AVX2_TU)
const KernelOps& avx2_kernel_table();  // kernels_avx2.cpp
#endif

const KernelOps* avx2_kernels() {
#if defined(TUTTE_HAVE_AVX2_TU)
  if (__builtin_cpu_supports("avx2")) {
    return &avx2_kernel_table();
  }
#endif
  return nullptr;
}

const KernelOps& best_kernels() {
  if (const KernelOps* avx2 = avx2_kernels()) return *avx2;
  return scalar_kernels();
}

std::vector<const KernelOps*> available_kernels() {
  std::vector<const KernelOps*> out{&scalar_kernels()};
  if (const KernelOps* avx2 = avx2_kernels()) out.push_back(avx2);
  return out;
}

}  // namespace tutte
