#include "cvteleport/kernels.hpp"

#include <atomic>

#include "kernels_impl.hpp"

namespace cvt::kernels {

namespace {

using detail::KernelTable;

const KernelTable* pick_default() {
#if CVT_KERNELS_AVX2
  if (detail::avx2_supported()) return &detail::avx2_table();
#endif
  return &detail::scalar_table();
}

std::atomic<const KernelTable*>& table_slot() {
  static std::atomic<const KernelTable*> slot{pick_default()};
  return slot;
}

const KernelTable& table() { return *table_slot().load(std::memory_order_relaxed); }

}  // namespace

Backend active_backend() {
#if CVT_KERNELS_AVX2
  if (&table() == &detail::avx2_table()) return Backend::avx2;
#endif
  return Backend::scalar;
}

bool set_backend(Backend b) {
  switch (b) {
    case Backend::scalar:
      table_slot().store(&detail::scalar_table(), std::memory_order_relaxed);
      return true;
    case Backend::avx2:
#if CVT_KERNELS_AVX2
      if (detail::avx2_supported()) {
        table_slot().store(&detail::avx2_table(), std::memory_order_relaxed);
        return true;
      }
#endif
      return false;
  }
  return false;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

void exp_poly_row(const double* m, std::size_t n, double decay,
                  const double* coef, std::size_t ncoef, double scale,
                  double* out) {
  table().exp_poly_row(m, n, decay, coef, ncoef, scale, out);
}

void radius2_row(const double* xs, std::size_t n, double x0, double psq,
                 double* out) {
  table().radius2_row(xs, n, x0, psq, out);
}

void gauss_quad_row(const double* xs, std::size_t n, double x0, double dp,
                    double qxx, double qxp, double qpp, double scale,
                    double* out) {
  table().gauss_quad_row(xs, n, x0, dp, qxx, qxp, qpp, scale, out);
}

double min_value(const double* v, std::size_t n) {
  return table().min_value(v, n);
}

void scaled_add(double* acc, const double* src, double w, std::size_t n) {
  table().scaled_add(acc, src, w, n);
}

}  // namespace cvt::kernels
