#pragma once

#include <cstddef>

// Internal kernel tables. Each backend fills one of these; dispatch.cpp picks
// the widest one the CPU supports.

namespace cvt::kernels::detail {

struct KernelTable {
  void (*exp_poly_row)(const double*, std::size_t, double, const double*,
                       std::size_t, double, double*);
  void (*radius2_row)(const double*, std::size_t, double, double, double*);
  void (*gauss_quad_row)(const double*, std::size_t, double, double, double,
                         double, double, double, double*);
  double (*min_value)(const double*, std::size_t);
  void (*scaled_add)(double*, const double*, double, std::size_t);
};

const KernelTable& scalar_table();

#if CVT_KERNELS_AVX2
const KernelTable& avx2_table();
bool avx2_supported();
#endif

}  // namespace cvt::kernels::detail
