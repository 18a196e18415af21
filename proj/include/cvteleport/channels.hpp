#pragma once

#include "cvteleport/fock.hpp"

namespace cvt {

/// Squeezing r and per-arm transmittance T of the teleportation channel,
/// with the derived scalars used throughout.
struct ChannelParams {
  ChannelParams(double r, double T);

  double r;
  double T;

  double lambda() const { return lambda_; }
  double g() const { return -std::log(T); }
  /// Thermal photons injected by the averaged channel, 1 - (1 - e^{-2r}) T.
  double nbar() const { return nbar_; }
  /// Per-outcome thermal photons, lambda^2 T (1-T) / (1 - lambda^2 (1-T)).
  double ntilde() const { return ntilde_; }
  /// Sign-flipped companion 1 + 2 lambda T / (1 - lambda).
  double nbar_minus() const { return nbar_minus_; }

 private:
  double lambda_, nbar_, ntilde_, nbar_minus_;
};

struct MeasurementOutcome {
  double x = 0;
  double p = 0;
  Complex mu() const { return Complex(x, p) / std::sqrt(2.0); }
};

/// Position-basis arguments of the channel kernel G.
struct KernelArgs {
  double y1, y2, z1, z2;
};

enum class KernelPrefactor {
  corrected,  // 1 / (2 pi^2 sqrt(nbar * nbar_minus)); exact T -> 1 product
  as_printed  // 1 / (2 pi^2 nbar)
};

/// Vacuum-coupling loss channel with amplitude-squared transmittance T,
/// applied through its exact photon-loss Kraus decomposition (trace
/// preserving for every cutoff).
DensityMatrix loss_map(const DensityMatrix& rho, double T);

/// Same map under the name used for channel comparisons.
DensityMatrix direct_transmit(const DensityMatrix& rho, double T);

/// Outcome-averaged teleportation channel: Gaussian displacement noise of
/// variance nbar applied by polar quadrature over displacements, refined
/// until successive grids agree to 1e-5 in trace distance.
DensityMatrix teleport_average(const DensityMatrix& rho_in,
                               const ChannelParams& params);

/// Bob's state for one measurement outcome and a coherent input:
/// a displaced thermal state with center mu_alpha and ntilde photons.
DensityMatrix teleport_outcome(Complex alpha_in,
                               const MeasurementOutcome& outcome,
                               const ChannelParams& params, int dim);

/// Center of the outcome state, mu + lambda T (alpha - mu) / (1 - lambda^2 (1-T)).
Complex outcome_displacement(Complex alpha_in, const MeasurementOutcome& outcome,
                             const ChannelParams& params);

/// Probability density of outcome (x, p) for a coherent input, normalized
/// over dx dp (= 2 d^2 mu).
double outcome_density(Complex alpha_in, const MeasurementOutcome& outcome,
                       const ChannelParams& params);

/// Pointwise value of the position-basis kernel G(y1, y2, z1, z2).
double kernel_g(const KernelArgs& args, const ChannelParams& params,
                KernelPrefactor prefactor = KernelPrefactor::corrected);

/// Single-mode factor of the T -> 1 kernel factorization,
/// g(x, y) = (1 / (pi sqrt 2)) exp(-e^{2r}(x-y)^2/4 - e^{-2r}(x+y)^2/4).
double kernel_g_factor(double x, double y, double r);

/// Thermal photon numbers for covering an n-times longer link: one hop at
/// transmittance T^n versus n iterated hops at T.
struct IterationComparison {
  double single_hop;  // nbar at transmittance T^n
  double iterated;    // n * nbar(T)
};
IterationComparison iterate_teleport_nbar(const ChannelParams& params, int n);

/// Cutoff needed by teleport_average for an input with the given mean photon
/// number (quadrature displacements spread the state).
int required_teleport_cutoff(double input_mean_photons,
                             const ChannelParams& params);

}  // namespace cvt
