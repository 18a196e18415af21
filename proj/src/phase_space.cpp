#include "cvteleport/phase_space.hpp"

#include <cmath>
#include <functional>

#include "cvteleport/kernels.hpp"
#include "cvteleport/numerics.hpp"

namespace cvt {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> GridSpec::xs() const {
  std::vector<double> v(nx);
  for (int i = 0; i < nx; ++i) v[i] = x_min + i * dx();
  return v;
}

std::vector<double> GridSpec::ps() const {
  std::vector<double> v(np);
  for (int j = 0; j < np; ++j) v[j] = p_min + j * dp();
  return v;
}

GridSpec GridSpec::centered(double half_extent, int n) {
  return GridSpec{-half_extent, half_extent, -half_extent, half_extent, n, n};
}

double QuasiprobGrid::min_value() const {
  return kernels::min_value(values.data(),
                            static_cast<std::size_t>(values.size()));
}

GaussianStateParams GaussianStateParams::for_state(const StateSpec& spec) {
  GaussianStateParams g;
  switch (spec.kind) {
    case StateKind::coherent:
      g.mean = spec.amplitude;
      return g;
    case StateKind::thermal:
      g.cov_plus = g.cov_minus = spec.mean_thermal;
      return g;
    case StateKind::squeezed_vacuum: {
      const double s = std::abs(spec.squeezing);
      g.cov_minus = -0.5 * (1.0 - std::exp(-2.0 * s));
      g.cov_plus = 0.5 * (std::exp(2.0 * s) - 1.0);
      g.orientation = 0.5 * std::arg(spec.squeezing);
      return g;
    }
    default:
      throw UnsupportedSpec("state has no Gaussian P-level description");
  }
}

GaussianStateParams GaussianStateParams::amplitude_scaled(double s) const {
  GaussianStateParams g = *this;
  g.mean *= s;
  g.cov_plus *= s * s;
  g.cov_minus *= s * s;
  return g;
}

std::vector<double> fock_r_poly(int n, double tau) {
  // R_n(alpha, tau) = exp(-m/tau)/(pi tau) * sum_k c_k m^k with
  // c_k = C(n,k)/k! * (tau-1)^{n-k} / tau^{n+k}; the k = n term keeps the
  // expression regular at tau = 1 where it reduces to the Q-function of |n>.
  std::vector<double> c(n + 1);
  for (int k = 0; k <= n; ++k)
    c[k] = std::exp(log_binomial(n, k) - log_factorial(k)) *
           std::pow(tau - 1.0, n - k) / std::pow(tau, n + k);
  return c;
}

double r_function_fock(int n, double tau, Complex alpha) {
  if (n < 0) throw InvalidSpec("fock order must be >= 0");
  if (!(tau > 0.0)) throw InvalidTau("smoothing tau must be > 0");
  const std::vector<double> c = fock_r_poly(n, tau);
  const double m = std::norm(alpha);
  double out = 0.0;
  kernels::exp_poly_row(&m, 1, 1.0 / tau, c.data(), c.size(), 1.0 / (kPi * tau),
                        &out);
  return out;
}

double r_function_gaussian(const GaussianStateParams& gauss, double tau,
                           Complex alpha) {
  if (!(tau > 0.0)) throw InvalidTau("smoothing tau must be > 0");
  const double a = gauss.cov_minus + tau;
  const double b = gauss.cov_plus + tau;
  if (a <= 0.0)
    throw NotRepresentable("R-function diverges: tau + cov_minus <= 0");
  const Complex d = alpha - gauss.mean;
  const double cs = std::cos(gauss.orientation);
  const double sn = std::sin(gauss.orientation);
  const double u = cs * d.real() + sn * d.imag();
  const double w = -sn * d.real() + cs * d.imag();
  return std::exp(-u * u / a - w * w / b) / (kPi * std::sqrt(a * b));
}

QuasiprobGrid make_fock_r_grid(int n, double tau, const GridSpec& spec) {
  if (n < 0) throw InvalidSpec("fock order must be >= 0");
  if (!(tau > 0.0)) throw InvalidTau("smoothing tau must be > 0");
  const std::vector<double> c = fock_r_poly(n, tau);
  const std::vector<double> xs = spec.xs();
  const std::vector<double> ps = spec.ps();
  QuasiprobGrid grid{spec, OrderTag::smoothing, tau,
                     Eigen::ArrayXXd(spec.nx, spec.np)};
  std::vector<double> m(spec.nx);
  for (int j = 0; j < spec.np; ++j) {
    kernels::radius2_row(xs.data(), xs.size(), 0.0, ps[j] * ps[j], m.data());
    kernels::exp_poly_row(m.data(), m.size(), 1.0 / tau, c.data(), c.size(),
                          1.0 / (kPi * tau), &grid.values(0, j));
  }
  return grid;
}

QuasiprobGrid make_gaussian_r_grid(const GaussianStateParams& gauss, double tau,
                                   const GridSpec& spec) {
  if (!(tau > 0.0)) throw InvalidTau("smoothing tau must be > 0");
  const double a = gauss.cov_minus + tau;
  const double b = gauss.cov_plus + tau;
  if (a <= 0.0)
    throw NotRepresentable("R-function diverges: tau + cov_minus <= 0");
  const double cs = std::cos(gauss.orientation);
  const double sn = std::sin(gauss.orientation);
  // u^2/a + w^2/b in grid coordinates (dx, dp)
  const double qxx = cs * cs / a + sn * sn / b;
  const double qpp = sn * sn / a + cs * cs / b;
  const double qxp = cs * sn * (1.0 / a - 1.0 / b);
  const double scale = 1.0 / (kPi * std::sqrt(a * b));

  const std::vector<double> xs = spec.xs();
  const std::vector<double> ps = spec.ps();
  QuasiprobGrid grid{spec, OrderTag::smoothing, tau,
                     Eigen::ArrayXXd(spec.nx, spec.np)};
  for (int j = 0; j < spec.np; ++j)
    kernels::gauss_quad_row(xs.data(), xs.size(), gauss.mean.real(),
                            ps[j] - gauss.mean.imag(), qxx, qxp, qpp, scale,
                            &grid.values(0, j));
  return grid;
}

QuasiprobGrid smooth(const QuasiprobGrid& grid_in, double extra_variance) {
  if (!(extra_variance > 0.0))
    throw InvalidSpec("smoothing variance must be > 0");
  const GridSpec& s = grid_in.spec;
  const double margin = 5.0 * std::sqrt(extra_variance);

  // The input support plus the smoothing margin must fit inside the grid,
  // otherwise edge values of the output are silently underestimated.
  const double maxabs = grid_in.values.abs().maxCoeff();
  if (maxabs > 0.0) {
    const std::vector<double> xs = s.xs();
    const std::vector<double> ps = s.ps();
    double sx_lo = s.x_max, sx_hi = s.x_min, sp_lo = s.p_max, sp_hi = s.p_min;
    for (int i = 0; i < s.nx; ++i)
      for (int j = 0; j < s.np; ++j)
        if (std::abs(grid_in.values(i, j)) > 1e-9 * maxabs) {
          sx_lo = std::min(sx_lo, xs[i]);
          sx_hi = std::max(sx_hi, xs[i]);
          sp_lo = std::min(sp_lo, ps[j]);
          sp_hi = std::max(sp_hi, ps[j]);
        }
    if (sx_lo - margin < s.x_min || sx_hi + margin > s.x_max ||
        sp_lo - margin < s.p_min || sp_hi + margin > s.p_max)
      throw GridTooSmall("grid extent below support + 5 sigma of the kernel");
  }

  // Separable Gaussian quadrature: out = Gx * in * Gp^T.
  const std::vector<double> xs = s.xs();
  const std::vector<double> ps = s.ps();
  Eigen::MatrixXd gx(s.nx, s.nx), gp(s.np, s.np);
  const double wx = s.dx() / std::sqrt(kPi * extra_variance);
  const double wp = s.dp() / std::sqrt(kPi * extra_variance);
  for (int i = 0; i < s.nx; ++i)
    for (int k = 0; k < s.nx; ++k) {
      const double d = xs[i] - xs[k];
      gx(i, k) = wx * std::exp(-d * d / extra_variance);
    }
  for (int j = 0; j < s.np; ++j)
    for (int k = 0; k < s.np; ++k) {
      const double d = ps[j] - ps[k];
      gp(j, k) = wp * std::exp(-d * d / extra_variance);
    }

  QuasiprobGrid out{s, grid_in.tag, 0.0, Eigen::ArrayXXd(s.nx, s.np)};
  out.values = (gx * grid_in.values.matrix() * gp.transpose()).array();
  out.order = (grid_in.tag == OrderTag::s_order)
                  ? grid_in.order - extra_variance
                  : grid_in.order + extra_variance;
  return out;
}

namespace {

/// Positivity of the Fock R family, certified on a radial grid in
/// m = |alpha|^2. The family is isotropic, so the reduction is exact; the
/// radial grid is dense near the origin where the negative ring of the
/// near-Q regime collapses.
bool fock_r_nonnegative(int n, double tau_eff,
                        const std::vector<double>& m_grid,
                        std::vector<double>& buf) {
  if (tau_eff >= 1.0) return true;  // at or beyond the Q level
  const std::vector<double> c = fock_r_poly(n, tau_eff);
  buf.resize(m_grid.size());
  kernels::exp_poly_row(m_grid.data(), m_grid.size(), 1.0 / tau_eff, c.data(),
                        c.size(), 1.0 / (kPi * tau_eff), buf.data());
  return kernels::min_value(buf.data(), buf.size()) >= -1e-9;
}

std::vector<double> fock_m_grid(int n) {
  const double extent = 6.0 * (1.0 + std::sqrt(double(n)));
  const double m_max = extent * extent;
  std::vector<double> m;
  m.reserve(40000);
  const double dense_end = std::min(8.0, m_max);
  for (double v = 0.0; v <= dense_end; v += 2.5e-4) m.push_back(v);
  for (double v = dense_end; v <= m_max; v += 1e-2) m.push_back(v);
  return m;
}

double bisect_depth(const std::function<bool(double)>& nonneg,
                    double smoothing, double tol) {
  if (nonneg(smoothing)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (nonneg(smoothing + mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

bool gaussian_nonnegative(const GaussianStateParams& g, double tau_eff) {
  // Finite Gaussians are positive everywhere; the integral only diverges
  // below -cov_minus. The boundary itself is a delta ridge, still nonnegative.
  return tau_eff + g.cov_minus >= 0.0;
}

}  // namespace

double gaussian_depth_estimate(const GaussianStateParams& gauss,
                               double effective_smoothing, double tol) {
  if (!(tol >= 1e-4)) throw InvalidSpec("depth tolerance must be >= 1e-4");
  if (!(effective_smoothing >= 0.0))
    throw InvalidSpec("smoothing must be >= 0");
  return bisect_depth(
      [&](double t) { return gaussian_nonnegative(gauss, t); },
      effective_smoothing, tol);
}

double depth_estimate(const StateSpec& spec, double effective_smoothing,
                      double tol) {
  if (!(tol >= 1e-4)) throw InvalidSpec("depth tolerance must be >= 1e-4");
  if (!(effective_smoothing >= 0.0))
    throw InvalidSpec("smoothing must be >= 0");
  switch (spec.kind) {
    case StateKind::fock: {
      const int n = spec.photon_number;
      if (n == 0) return 0.0;
      const std::vector<double> m_grid = fock_m_grid(n);
      std::vector<double> buf;
      return bisect_depth(
          [&](double t) { return fock_r_nonnegative(n, t, m_grid, buf); },
          effective_smoothing, tol);
    }
    case StateKind::coherent:
    case StateKind::thermal:
    case StateKind::squeezed_vacuum:
      return gaussian_depth_estimate(GaussianStateParams::for_state(spec),
                                     effective_smoothing, tol);
    case StateKind::cat:
      throw UnsupportedSpec(
          "cat depth is handled analytically, not by grid estimate");
  }
  throw InvalidSpec("unknown state kind");
}

QuasiprobGrid quasiprob_from_density(const DensityMatrix& rho, double s,
                                     const GridSpec& spec) {
  if (!(s < 0.5))
    throw OrderOutOfRange("displaced-number series diverges for s >= 1/2");
  const int dim = rho.dim();
  const double ratio = s / (s - 1.0);
  const double scale = 1.0 / (kPi * (1.0 - s));

  int n_terms = 1;
  if (std::abs(ratio) > 0.0) {
    n_terms = std::min<int>(
        dim, static_cast<int>(std::ceil(std::log(1e-14) /
                                        std::log(std::abs(ratio)))) + 1);
  }

  const std::vector<double> xs = spec.xs();
  const std::vector<double> ps = spec.ps();
  QuasiprobGrid grid{spec, OrderTag::s_order, s,
                     Eigen::ArrayXXd(spec.nx, spec.np)};
  Vector d(dim), dn(dim), tmp(dim);
  for (int j = 0; j < spec.np; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      const Complex alpha(xs[i], ps[j]);
      // d = D(alpha)|0>, the truncated coherent column; successors from
      // sqrt(n+1) d_{n+1} = (a^dag - conj(alpha)) d_n.
      d(0) = std::exp(-0.5 * std::norm(alpha));
      for (int k = 1; k < dim; ++k)
        d(k) = d(k - 1) * alpha / std::sqrt(double(k));
      double acc = 0.0;
      double weight = 1.0;
      for (int n = 0;; ++n) {
        tmp.noalias() = rho.elems * d;
        acc += weight * d.dot(tmp).real();
        if (n + 1 >= n_terms) break;
        weight *= ratio;
        dn(0) = -std::conj(alpha) * d(0);
        for (int k = 1; k < dim; ++k)
          dn(k) = std::sqrt(double(k)) * d(k - 1) - std::conj(alpha) * d(k);
        d = dn / std::sqrt(double(n + 1));
      }
      grid.values(i, j) = scale * acc;
    }
  }
  return grid;
}

}  // namespace cvt
