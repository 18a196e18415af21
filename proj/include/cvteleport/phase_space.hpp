#pragma once

#include <vector>

#include "cvteleport/fock.hpp"

namespace cvt {

/// Rectangular phase-space grid over alpha = x + i p.
struct GridSpec {
  double x_min, x_max, p_min, p_max;
  int nx, np;

  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  std::vector<double> xs() const;
  std::vector<double> ps() const;

  /// Symmetric square grid of half-extent L with n points per axis.
  static GridSpec centered(double half_extent, int n);
};

/// Whether `order` is an s-ordering parameter or a smoothing width tau.
/// The two are two parameterizations of one family: R(alpha, tau) is the
/// s-ordered function at s = 1 - tau.
enum class OrderTag { s_order, smoothing };

struct QuasiprobGrid {
  GridSpec spec;
  OrderTag tag;
  double order;
  Eigen::ArrayXXd values;  // values(i, j) at (x_i, p_j)

  double cell_area() const { return spec.dx() * spec.dp(); }
  double riemann_sum() const { return values.sum() * cell_area(); }
  double min_value() const;
};

/// P-level Gaussian description of a Gaussian state: principal variances of
/// the exponent (negative cov_minus marks a nonclassical Gaussian), with the
/// cov_minus axis at angle `orientation` from the real axis.
struct GaussianStateParams {
  Complex mean{};
  double cov_plus = 0;
  double cov_minus = 0;
  double orientation = 0;

  static GaussianStateParams for_state(const StateSpec& spec);

  /// Amplitude rescaling alpha -> s alpha (covariances scale with s^2).
  GaussianStateParams amplitude_scaled(double s) const;
};

/// Gaussian smoothing by `extra_variance`: convolution with
/// exp(-|alpha - beta|^2 / v) / (pi v). Lowers an s-order by v, raises a
/// smoothing level by v.
QuasiprobGrid smooth(const QuasiprobGrid& grid_in, double extra_variance);

/// R-function of the Fock state |n> at smoothing tau (tau = 1 gives its
/// Q-function). Closed form: exp(-m/tau)/(pi tau) times a degree-n
/// polynomial in m = |alpha|^2 that is regular at tau = 1.
double r_function_fock(int n, double tau, Complex alpha);

/// Polynomial coefficients of the above, c[k] multiplying m^k.
std::vector<double> fock_r_poly(int n, double tau);

/// R-function of a Gaussian state at smoothing tau. Throws NotRepresentable
/// when tau + cov_minus <= 0 (the defining integral diverges there).
double r_function_gaussian(const GaussianStateParams& gauss, double tau,
                           Complex alpha);

QuasiprobGrid make_fock_r_grid(int n, double tau, const GridSpec& spec);
QuasiprobGrid make_gaussian_r_grid(const GaussianStateParams& gauss, double tau,
                                   const GridSpec& spec);

/// Numeric nonclassical depth after an extra Gaussian smoothing: bisection
/// on the smallest tau with an everywhere-nonnegative R-function, evaluated
/// through the closed-form families. Supported kinds: fock, squeezed_vacuum,
/// coherent, thermal.
double depth_estimate(const StateSpec& spec, double effective_smoothing,
                      double tol);

/// Minimal smoothing that renders a Gaussian family nonnegative, located by
/// the same bisection; used for the direct-channel depth checks.
double gaussian_depth_estimate(const GaussianStateParams& gauss,
                               double effective_smoothing, double tol);

/// s-ordered quasiprobability of a density matrix on a grid, via the
/// displaced-number series (convergent for s < 1/2; s = 0 is the Q-function).
QuasiprobGrid quasiprob_from_density(const DensityMatrix& rho, double s,
                                     const GridSpec& spec);

}  // namespace cvt
