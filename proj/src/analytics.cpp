#include "cvteleport/analytics.hpp"

#include <cmath>
#include <limits>

#include "cvteleport/numerics.hpp"

namespace cvt {

namespace {

/// sinh(a) / sinh(b) without overflow for large b; requires b > 0, a >= 0.
double sinh_ratio(double a, double b) {
  if (b < 30.0) return std::sinh(a) / std::sinh(b);
  return std::exp(a - b) * (1.0 - std::exp(-2.0 * a)) /
         (1.0 - std::exp(-2.0 * b));
}

}  // namespace

double fidelity_coherent_tel(const ChannelParams& params) {
  return 1.0 / (1.0 + params.nbar());
}

double fidelity_fock_tel(int n, const ChannelParams& params) {
  if (n < 0) throw InvalidSpec("fock order must be >= 0");
  const double nb = params.nbar();
  if (std::abs(1.0 - nb) < 1e-9) {
    // Removable singularity of the Legendre form; the limit follows from the
    // leading Legendre coefficient.
    return std::exp(log_binomial(2 * n, n)) / (2.0 * std::pow(4.0, n));
  }
  const double ratio = (1.0 - nb) / (1.0 + nb);
  const double arg = (1.0 + nb * nb) / (1.0 - nb * nb);
  return std::pow(ratio, n) * legendre_p(n, arg) / (1.0 + nb);
}

double fidelity_cat_tel(Complex alpha, const ChannelParams& params) {
  const double a2 = std::norm(alpha);
  if (std::abs(alpha) < 1e-3) throw InvalidSpec("cat amplitude below 1e-3");
  const double nb = params.nbar();
  const double q = (1.0 - nb) / (1.0 + nb);
  const double ratio = sinh_ratio(q * a2, a2);
  return (1.0 + ratio * ratio) / (2.0 * (1.0 + nb));
}

double fidelity_fock_dir(int n, double T) {
  if (n < 0) throw InvalidSpec("fock order must be >= 0");
  if (!(T > 0.0 && T <= 1.0))
    throw InvalidTransmittance("direct fock fidelity needs T in (0, 1]");
  return std::pow(T, n);
}

double fidelity_cat_dir(Complex alpha, double T) {
  if (std::abs(alpha) < 1e-3) throw InvalidSpec("cat amplitude below 1e-3");
  if (!(T >= 0.0 && T <= 1.0))
    throw InvalidTransmittance("transmittance must lie in [0, 1]");
  const double a2 = std::norm(alpha);
  const double ratio = sinh_ratio(std::sqrt(T) * a2, a2);
  const double ca = (1.0 - T) * a2;
  if (ca < 30.0) return ratio * ratio * std::cosh(ca);
  // log-space product for very large |alpha|^2
  const double lr = (std::sqrt(T) - 1.0) * a2 +
                    std::log1p(-std::exp(-2.0 * std::sqrt(T) * a2)) -
                    std::log1p(-std::exp(-2.0 * a2));
  return std::exp(2.0 * lr + ca + std::log1p(std::exp(-2.0 * ca)) - std::log(2.0));
}

double fidelity_generic_tel(const StateSpec& input, const ChannelParams& params) {
  if (!input.is_pure())
    throw InvalidSpec("generic teleport fidelity needs a pure input");
  const int dim = std::max(default_cutoff(input),
                           required_teleport_cutoff(input.mean_photon_number(), params));
  const DensityMatrix rho = build_state(input, dim);
  return fidelity(rho, teleport_average(rho, params));
}

double depth_of_state(const StateSpec& spec) {
  switch (spec.kind) {
    case StateKind::coherent:
    case StateKind::thermal:
      return 0.0;
    case StateKind::fock:
      return spec.photon_number == 0 ? 0.0 : 1.0;
    case StateKind::cat:
      return 1.0;
    case StateKind::squeezed_vacuum:
      return 0.5 * (1.0 - std::exp(-2.0 * std::abs(spec.squeezing)));
  }
  throw InvalidSpec("unknown state kind");
}

double depth_transfer_tel(double tau_in, const ChannelParams& params) {
  if (!(tau_in >= 0.0 && tau_in <= 1.0))
    throw InvalidSpec("input depth must lie in [0, 1]");
  const double out = tau_in - params.nbar();
  if (out <= 0.0) return 0.0;
  return out > 1.0 ? 1.0 : out;
}

double depth_threshold_r(double tau_in, double T) {
  if (!(tau_in >= 0.0 && tau_in <= 1.0))
    throw InvalidSpec("input depth must lie in [0, 1]");
  if (!(T > 0.0 && T <= 1.0))
    throw InvalidTransmittance("depth threshold needs T in (0, 1]");
  const double arg = 1.0 - (1.0 - tau_in) / T;
  if (arg <= 0.0) return std::numeric_limits<double>::infinity();
  return -0.5 * std::log(arg);
}

CrossoverWindow crossover(double tau_in, double r) {
  if (!(tau_in >= 0.0 && tau_in <= 1.0))
    throw InvalidSpec("input depth must lie in [0, 1]");
  if (!(r >= 0.0)) throw InvalidSpec("squeezing parameter must be >= 0");
  const double s = -std::expm1(-2.0 * r);  // 1 - e^{-2r}
  if (tau_in == 1.0) {
    // tau_D = T (s - T): the window is (0, s) exactly.
    if (s <= 0.0) return std::nullopt;
    return std::make_pair(0.0, s);
  }
  if (tau_in < 0.5) return std::nullopt;
  if (tau_in == 0.0) return std::nullopt;

  double disc = s * s - 4.0 * tau_in * (1.0 - tau_in);
  if (std::abs(disc) < 1e-14) disc = 0.0;
  if (disc <= 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  double lo = (s - sq) / (2.0 * tau_in);
  double hi = (s + sq) / (2.0 * tau_in);
  if (lo < 0.0) lo = 0.0;
  if (hi > 1.0) hi = 1.0;
  // Tangential windows below resolvable width count as empty.
  if (hi - lo < 1e-7) return std::nullopt;
  return std::make_pair(lo, hi);
}

DepthReport depth_report(double tau_in, const ChannelParams& params) {
  DepthReport rep;
  rep.tau_in = tau_in;
  rep.tau_tel = depth_transfer_tel(tau_in, params);
  rep.tau_dir = tau_in * params.T * params.T;
  rep.tau_diff = rep.tau_tel - rep.tau_dir;
  rep.r_threshold = depth_threshold_r(tau_in, params.T);
  rep.T_window = crossover(tau_in, params.r);
  return rep;
}

}  // namespace cvt
