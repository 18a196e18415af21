#pragma once

#include <optional>
#include <string>
#include <utility>

#include "cvteleport/channels.hpp"
#include "cvteleport/fock.hpp"

namespace cvt {

/// Closed-form teleportation fidelity of a coherent input,
/// 1 / (1 + nbar) = (1 + lambda) / (2 (1 + lambda - lambda T)).
double fidelity_coherent_tel(const ChannelParams& params);

/// Closed-form teleportation fidelity of the Fock state |n>; the removable
/// nbar = 1 singularity is evaluated through its limit C(2n, n) / (2 4^n).
double fidelity_fock_tel(int n, const ChannelParams& params);

/// Closed-form teleportation fidelity of the odd cat state of amplitude alpha.
double fidelity_cat_tel(Complex alpha, const ChannelParams& params);

/// Direct-transmission fidelity of |n>: T^n.
double fidelity_fock_dir(int n, double T);

/// Direct-transmission fidelity of the odd cat state.
double fidelity_cat_dir(Complex alpha, double T);

/// Numeric teleportation fidelity through the Fock-basis channel oracle;
/// agrees with the specialized closed forms where both apply.
double fidelity_generic_tel(const StateSpec& input, const ChannelParams& params);

/// Nonclassical depth of an input state: 0 for coherent/thermal/vacuum,
/// 1 for Fock (n >= 1) and cat, (1 - e^{-2|xi|}) / 2 for squeezed vacuum.
double depth_of_state(const StateSpec& spec);

/// Depth surviving teleportation: max(tau_in - nbar, 0).
double depth_transfer_tel(double tau_in, const ChannelParams& params);

/// Squeezing bound for a nonvanishing output depth,
/// -(1/2) log(1 - (1 - tau_in) / T); +infinity when T <= 1 - tau_in.
double depth_threshold_r(double tau_in, double T);

using CrossoverWindow = std::optional<std::pair<double, double>>;

/// Transmittance window where teleportation preserves strictly more depth
/// than direct transmission at T^2; empty for tau_in < 1/2.
CrossoverWindow crossover(double tau_in, double r);

/// Bundle of depth results for one (tau_in, channel) configuration.
struct DepthReport {
  double tau_in;
  double tau_tel;       // max(tau_in - nbar, 0)
  double tau_dir;       // tau_in * T^2
  double tau_diff;      // tau_tel - tau_dir
  double r_threshold;   // depth_threshold_r(tau_in, T)
  CrossoverWindow T_window;
};

DepthReport depth_report(double tau_in, const ChannelParams& params);

enum class FidelityChannel { teleport, direct };
enum class FidelityMethod { closed_form, oracle };

struct FidelityReport {
  StateSpec input;
  FidelityChannel channel;
  double channel_T;  // direct transmittance, or params.T for teleport
  double value;
  FidelityMethod method;
};

}  // namespace cvt
