#include <cmath>

#include "kernels_impl.hpp"

namespace cvt::kernels::detail {

namespace {

void exp_poly_row_scalar(const double* m, std::size_t n, double decay,
                         const double* coef, std::size_t ncoef, double scale,
                         double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double mi = m[i];
    double poly = coef[ncoef - 1];
    for (std::size_t k = ncoef - 1; k-- > 0;) poly = std::fma(poly, mi, coef[k]);
    out[i] = scale * std::exp(-decay * mi) * poly;
  }
}

void radius2_row_scalar(const double* xs, std::size_t n, double x0, double psq,
                        double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - x0;
    out[i] = std::fma(dx, dx, psq);
  }
}

void gauss_quad_row_scalar(const double* xs, std::size_t n, double x0,
                           double dp, double qxx, double qxp, double qpp,
                           double scale, double* out) {
  const double cp = qpp * dp * dp;
  const double cx = 2.0 * qxp * dp;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - x0;
    const double quad = std::fma(std::fma(qxx, dx, cx), dx, cp);
    out[i] = scale * std::exp(-quad);
  }
}

double min_value_scalar(const double* v, std::size_t n) {
  double m = v[0];
  for (std::size_t i = 1; i < n; ++i)
    if (v[i] < m) m = v[i];
  return m;
}

void scaled_add_scalar(double* acc, const double* src, double w,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] = std::fma(w, src[i], acc[i]);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table = {
      exp_poly_row_scalar, radius2_row_scalar, gauss_quad_row_scalar,
      min_value_scalar,    scaled_add_scalar,
  };
  return table;
}

}  // namespace cvt::kernels::detail
