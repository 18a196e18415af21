#include "cvteleport/channels.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>
#include <vector>

#include "cvteleport/kernels.hpp"
#include "cvteleport/numerics.hpp"

namespace cvt {

namespace {

void check_transmittance(double T) {
  if (!(T >= 0.0 && T <= 1.0))
    throw InvalidTransmittance("transmittance must lie in [0, 1]");
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

ChannelParams::ChannelParams(double r_, double T_) : r(r_), T(T_) {
  if (!(r >= 0.0)) throw InvalidSpec("squeezing parameter must be >= 0");
  check_transmittance(T);
  lambda_ = std::tanh(r);
  nbar_ = 1.0 - (1.0 - std::exp(-2.0 * r)) * T;
  const double l2 = lambda_ * lambda_;
  ntilde_ = l2 * T * (1.0 - T) / (1.0 - l2 * (1.0 - T));
  nbar_minus_ = 1.0 + 2.0 * lambda_ * T / (1.0 - lambda_);
}

DensityMatrix loss_map(const DensityMatrix& rho, double T) {
  check_transmittance(T);
  const int dim = rho.dim();
  if (T == 1.0) return rho;

  DensityMatrix out;
  out.elems = Matrix::Zero(dim, dim);
  // Photon-loss Kraus operator A_k maps |n> to a_k(n) |n-k> with
  // a_k(n) = sqrt(C(n,k) T^{n-k} (1-T)^k); each conjugation is a shifted,
  // rescaled copy of rho, so the sum is O(dim^3) overall.
  const double sqT = std::sqrt(T);
  const double sqR = std::sqrt(1.0 - T);
  std::vector<double> amp(dim);
  for (int k = 0; k < dim; ++k) {
    for (int n = k; n < dim; ++n)
      amp[n] = std::exp(0.5 * log_binomial(n, k)) * std::pow(sqT, n - k) *
               std::pow(sqR, k);
    for (int m = 0; m + k < dim; ++m)
      for (int n = 0; n + k < dim; ++n)
        out.elems(m, n) += amp[m + k] * amp[n + k] * rho.elems(m + k, n + k);
  }
  return out;
}

DensityMatrix direct_transmit(const DensityMatrix& rho, double T) {
  return loss_map(rho, T);
}

int required_teleport_cutoff(double input_mean_photons,
                             const ChannelParams& params) {
  const double amp =
      std::sqrt(input_mean_photons) + 2.0 * std::sqrt(params.nbar());
  return tail_cutoff(amp * amp);
}

namespace {

/// Angular average of D(b e^{i theta}) rho D^dag(b e^{i theta}) over theta,
/// evaluated exactly: D(b e^{i theta}) = R(theta) D(b) R(theta)^dag with
/// R diagonal, so the average keeps only terms where the diagonal offsets
/// match. disp is the real orthogonal matrix D(b).
Matrix angular_average(const Eigen::MatrixXd& disp, const Matrix& rho) {
  const int dim = static_cast<int>(rho.rows());
  const Eigen::MatrixXd dispT = disp.transpose();  // column m = row m of D
  Matrix out = Matrix::Zero(dim, dim);
  Vector diag(dim);
  for (int d = 0; d < dim; ++d) {
    for (int j = d; j < dim; ++j) diag(j) = rho(j, j - d);
    for (int n = 0; n + d < dim; ++n) {
      Complex sum = 0.0;
      for (int j = d; j < dim; ++j)
        sum += dispT(j, n + d) * dispT(j - d, n) * diag(j);
      out(n + d, n) = sum;
      if (d > 0) out(n, n + d) = std::conj(sum);
    }
  }
  return out;
}

/// One radial quadrature pass of the Gaussian displacement channel:
/// Gauss-Legendre in s = |beta| / sqrt(nbar) over [0, 6] with the weight
/// 2 s e^{-s^2} carried explicitly (the integrand is entire in s, so the
/// rule converges spectrally), composed with the exact angular average.
Matrix displacement_noise_pass(const Matrix& rho, double nbar, int n_rad) {
  const int dim = static_cast<int>(rho.rows());
  const GaussLegendreRule rule = gauss_legendre(n_rad, 0.0, 6.0);

  // Radial displacements are exponentiated without the public amplitude
  // check: the outermost nodes carry weights down to e^{-36}, so their
  // truncation distortion is below the channel tolerances, while the
  // conjugation stays exactly unitary at any cutoff.
  Eigen::MatrixXd ladder_gap = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    ladder_gap(n, n - 1) = std::sqrt(double(n));
    ladder_gap(n - 1, n) = -std::sqrt(double(n));
  }

  Matrix acc = Matrix::Zero(dim, dim);
  for (int k = 0; k < n_rad; ++k) {
    const double s = rule.nodes[k];
    const Eigen::MatrixXd disp =
        (std::sqrt(nbar) * s * ladder_gap).exp().eval();
    const double w = rule.weights[k] * 2.0 * s * std::exp(-s * s);
    const Matrix term = angular_average(disp, rho);
    kernels::scaled_add(reinterpret_cast<double*>(acc.data()),
                        reinterpret_cast<const double*>(term.data()), w,
                        2 * static_cast<std::size_t>(dim) * dim);
  }
  return acc;
}

double matrix_trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

DensityMatrix teleport_average(const DensityMatrix& rho_in,
                               const ChannelParams& params) {
  const double nbar = params.nbar();
  if (nbar < 1e-12) return rho_in;

  const int dim = rho_in.dim();
  const int needed = required_teleport_cutoff(rho_in.mean_photons(), params);
  if (dim < needed)
    throw CutoffTooSmall("teleport_average needs cutoff >= " +
                         std::to_string(needed));

  int n_rad = 12;
  Matrix prev = displacement_noise_pass(rho_in.elems, nbar, n_rad);
  for (int level = 0; level < 4; ++level) {
    n_rad *= 2;
    Matrix cur = displacement_noise_pass(rho_in.elems, nbar, n_rad);
    if (matrix_trace_distance(prev, cur) <= 1e-5) {
      DensityMatrix out;
      out.elems = std::move(cur);
      return out;
    }
    prev = std::move(cur);
  }
  throw QuadratureNotConverged(
      "displacement quadrature did not reach 1e-5 between refinements");
}

Complex outcome_displacement(Complex alpha_in,
                             const MeasurementOutcome& outcome,
                             const ChannelParams& params) {
  const Complex mu = outcome.mu();
  const double l2 = params.lambda() * params.lambda();
  const double c = params.lambda() * params.T / (1.0 - l2 * (1.0 - params.T));
  return mu + c * (alpha_in - mu);
}

DensityMatrix teleport_outcome(Complex alpha_in,
                               const MeasurementOutcome& outcome,
                               const ChannelParams& params, int dim) {
  const Complex center = outcome_displacement(alpha_in, outcome, params);
  const double nt = params.ntilde();
  const int needed = std::max(tail_cutoff(std::norm(center) + nt),
                              static_cast<int>(std::ceil(4.0 * std::norm(center))));
  if (dim < needed)
    throw CutoffTooSmall("teleport_outcome needs cutoff >= " +
                         std::to_string(needed));
  const DensityMatrix th = build_state(StateSpec::make_thermal(nt), dim);
  const Matrix disp = displacement_matrix(center, dim);
  DensityMatrix out;
  out.elems = disp * th.elems * disp.adjoint();
  return out;
}

double outcome_density(Complex alpha_in, const MeasurementOutcome& outcome,
                       const ChannelParams& params) {
  const double l2 = params.lambda() * params.lambda();
  const double v = 1.0 - l2 * (1.0 - params.T);
  const double k = (1.0 - l2) / v;
  const Complex mu = outcome.mu();
  return k / (2.0 * kPi) * std::exp(-k * std::norm(alpha_in - mu));
}

namespace {

/// The symmetric quadratic form entering the kernel exponent.
double kernel_f(double x, double y, double lambda, double T) {
  const double lt = lambda * T;
  const double c = lambda * (1.0 - T);
  const double plus = c / (1.0 + lt);
  const double minus = c / (1.0 - lt);
  return (x + plus * y) * (x - minus * y) + (y + plus * x) * (y - minus * x);
}

}  // namespace

double kernel_g(const KernelArgs& args, const ChannelParams& params,
                KernelPrefactor prefactor) {
  const double lambda = params.lambda();
  const double T = params.T;
  const double lt = lambda * T;
  const double nb = params.nbar();
  const double nbm = params.nbar_minus();

  const double coeff =
      (1.0 - lt * lt) /
      ((1.0 - lambda * lambda) * (1.0 - lambda * lambda) * nb * nbm);
  const double exponent =
      -coeff *
      (0.25 * (1.0 + lt) * (1.0 + lt) *
           kernel_f(args.z1 - args.y1, args.z2 - args.y2, lambda, T) +
       0.25 * (1.0 - lt) * (1.0 - lt) *
           kernel_f(args.z1 + args.y1, args.z2 + args.y2, lambda, T) -
       0.5 * lambda * lambda * (1.0 - T) * (1.0 - T) *
           (kernel_f(args.y1, args.y2, lambda, T) +
            kernel_f(args.z1, args.z2, lambda, T)));

  const double pref = (prefactor == KernelPrefactor::corrected)
                          ? 1.0 / (2.0 * kPi * kPi * std::sqrt(nb * nbm))
                          : 1.0 / (2.0 * kPi * kPi * nb);
  return pref * std::exp(exponent);
}

double kernel_g_factor(double x, double y, double r) {
  const double e2r = std::exp(2.0 * r);
  const double d = x - y;
  const double s = x + y;
  return std::exp(-0.25 * e2r * d * d - 0.25 * s * s / e2r) /
         (kPi * std::sqrt(2.0));
}

IterationComparison iterate_teleport_nbar(const ChannelParams& params, int n) {
  if (n < 1) throw InvalidSpec("iteration count must be >= 1");
  IterationComparison cmp;
  cmp.iterated = n * params.nbar();
  cmp.single_hop = 1.0 - (1.0 - std::exp(-2.0 * params.r)) * std::pow(params.T, n);
  return cmp;
}

}  // namespace cvt
