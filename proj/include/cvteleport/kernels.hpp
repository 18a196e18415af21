#pragma once

#include <cstddef>

namespace cvt::kernels {

// Data-parallel inner loops shared by the phase-space grid evaluators and the
// quadrature channel oracles. Each kernel has a scalar reference
// implementation and an AVX2 variant; the active one is selected at runtime
// from CPU capabilities. Variants are equivalence-tested against each other.

enum class Backend { scalar, avx2 };

/// Backend currently used by the row kernels.
Backend active_backend();

/// Force a backend. Returns false (and leaves the selection unchanged) if the
/// requested backend is not available in this build / on this CPU.
bool set_backend(Backend b);

const char* backend_name(Backend b);

/// out[i] = scale * exp(-decay * m[i]) * (c[0] + c[1] m[i] + ... + c[nc-1] m[i]^(nc-1))
/// m[i] >= 0 is a squared phase-space radius. nc >= 1.
void exp_poly_row(const double* m, std::size_t n, double decay,
                  const double* coef, std::size_t ncoef, double scale,
                  double* out);

/// out[i] = (xs[i] - x0)^2 + psq
void radius2_row(const double* xs, std::size_t n, double x0, double psq,
                 double* out);

/// out[i] = scale * exp(-(qxx dx^2 + 2 qxp dx dp + qpp dp^2)),
/// dx = xs[i] - x0, dp fixed for the row.
void gauss_quad_row(const double* xs, std::size_t n, double x0, double dp,
                    double qxx, double qxp, double qpp, double scale,
                    double* out);

double min_value(const double* v, std::size_t n);

/// acc[i] += w * src[i]. Used on complex matrix buffers viewed as interleaved
/// doubles when accumulating quadrature terms.
void scaled_add(double* acc, const double* src, double w, std::size_t n);

}  // namespace cvt::kernels
