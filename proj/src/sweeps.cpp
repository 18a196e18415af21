#include "cvteleport/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cvt {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double lerp_grid(double lo, double hi, int i, int n) {
  return lo + (hi - lo) * i / (n - 1);
}

/// Numeric fidelity through the Fock-basis channels for one sweep point.
double oracle_fidelity(const StateSpec& spec, bool teleport, double r, double T,
                       int cutoff) {
  if (teleport) {
    const ChannelParams params(r, T);
    const int dim =
        cutoff > 0 ? cutoff
                   : std::max(default_cutoff(spec),
                              required_teleport_cutoff(spec.mean_photon_number(),
                                                       params));
    const DensityMatrix rho = build_state(spec, dim);
    return fidelity(rho, teleport_average(rho, params));
  }
  const int dim = cutoff > 0 ? cutoff : default_cutoff(spec);
  const DensityMatrix rho = build_state(spec, dim);
  return fidelity(rho, loss_map(rho, T));
}

}  // namespace

bool crossover_possible(double tau_in) {
  return tau_in >= 0.5 && tau_in <= 1.0;
}

std::vector<SweepRow> fidelity_sweep_rows(const FidelitySweepConfig& cfg) {
  if (cfg.points < 2 || cfg.cat_alpha2 <= 0.0 || cfg.fock_n < 0)
    throw InvalidSpec("invalid fidelity sweep configuration");
  const Complex cat_alpha = std::sqrt(Complex(cfg.cat_alpha2, 0.0));
  const StateSpec cat_spec = StateSpec::make_cat(cat_alpha);
  const StateSpec fock_spec = StateSpec::make_fock(cfg.fock_n);

  // Sample indices for the oracle cross-check, away from the T = 0 edge.
  std::vector<int> samples;
  for (int k = 1; k <= 5; ++k) samples.push_back(k * (cfg.points - 1) / 5);

  std::vector<SweepRow> rows;
  auto emit_curve = [&](const std::string& id, bool is_cat, bool teleport,
                        double r) {
    for (int i = 0; i < cfg.points; ++i) {
      const double T = lerp_grid(0.0, 1.0, i, cfg.points);
      const double t_direct = T * T;
      SweepRow row;
      row.metric = id;
      row.T = T;
      row.x = t_direct;
      if (teleport) {
        const ChannelParams params(r, T);
        row.r = r;
        row.lambda = params.lambda();
        row.nbar = params.nbar();
        row.closed_form = is_cat ? fidelity_cat_tel(cat_alpha, params)
                                 : fidelity_fock_tel(cfg.fock_n, params);
      } else {
        // The direct channel acts at T^2; the Fock value is T^(2n) with the
        // n = 0 / T = 0 edge covered by pow.
        row.closed_form = is_cat ? fidelity_cat_dir(cat_alpha, t_direct)
                                 : std::pow(t_direct, cfg.fock_n);
      }
      if (cfg.validate &&
          std::find(samples.begin(), samples.end(), i) != samples.end()) {
        const StateSpec& spec = is_cat ? cat_spec : fock_spec;
        row.oracle = oracle_fidelity(spec, teleport, r,
                                     teleport ? T : t_direct, cfg.cutoff);
        row.abs_diff = std::abs(row.closed_form - *row.oracle);
      }
      rows.push_back(std::move(row));
    }
  };

  emit_curve("dir_cat", true, false, 0.0);
  for (double r : cfg.r_values) emit_curve("tel_cat_r" + fmt(r), true, true, r);
  emit_curve("dir_fock", false, false, 0.0);
  for (double r : cfg.r_values)
    emit_curve("tel_fock_r" + fmt(r), false, true, r);
  return rows;
}

std::vector<SweepRow> depth_sweep_rows(const DepthSweepConfig& cfg) {
  if (cfg.points < 2 || !(cfg.tau_in >= 0.0 && cfg.tau_in <= 1.0))
    throw InvalidSpec("invalid depth sweep configuration");
  if (cfg.figure != 2 && cfg.figure != 4)
    throw InvalidSpec("depth sweep reproduces figures 2 and 4 only");

  std::vector<SweepRow> rows;
  auto push = [&](const std::string& id, double r, double T, double x,
                  double value) {
    SweepRow row;
    row.metric = id;
    row.r = r;
    row.T = T;
    if (T >= 0.0 && T <= 1.0 && r >= 0.0) {
      const ChannelParams params(r, T);
      row.lambda = params.lambda();
      row.nbar = params.nbar();
    }
    row.x = x;
    row.closed_form = value;
    rows.push_back(std::move(row));
  };

  if (cfg.figure == 2) {
    // Output depth against squeezing, one curve per transmittance, plus the
    // squeezing bound for a nonvanishing output depth as a function of T.
    for (double T : cfg.T_values)
      for (int i = 0; i < cfg.points; ++i) {
        const double r = lerp_grid(0.0, 2.5, i, cfg.points);
        push("tel_T" + fmt(T), r, T, r,
             depth_transfer_tel(cfg.tau_in, ChannelParams(r, T)));
      }
    for (int i = 0; i < cfg.points; ++i) {
      const double T = lerp_grid(1e-3, 1.0, i, cfg.points);
      const double bound = depth_threshold_r(cfg.tau_in, T);
      if (std::isfinite(bound)) push("r_bound", bound, T, T, bound);
    }
    return rows;
  }

  // Figure 4: output depth against transmittance for teleportation per r,
  // direct transmission at T^2, their difference, the crossover windows and
  // the squeezing bound for a window to exist.
  for (double r : cfg.r_values)
    for (int i = 0; i < cfg.points; ++i) {
      const double T = lerp_grid(0.0, 1.0, i, cfg.points);
      push("tel_r" + fmt(r), r, T, T,
           depth_transfer_tel(cfg.tau_in, ChannelParams(r, T)));
    }
  for (int i = 0; i < cfg.points; ++i) {
    const double T = lerp_grid(0.0, 1.0, i, cfg.points);
    push("dir", 0.0, T, T, cfg.tau_in * T * T);
  }
  for (double r : cfg.r_values)
    for (int i = 0; i < cfg.points; ++i) {
      const double T = lerp_grid(0.0, 1.0, i, cfg.points);
      const double diff = depth_transfer_tel(cfg.tau_in, ChannelParams(r, T)) -
                          cfg.tau_in * T * T;
      push("tauD_r" + fmt(r), r, T, T, diff);
    }
  for (double r : cfg.r_values) {
    const CrossoverWindow w = crossover(cfg.tau_in, r);
    if (w) push("xover_r" + fmt(r), r, -1.0, w->first, w->second);
  }
  for (int i = 0; i < cfg.points; ++i) {
    const double tau = lerp_grid(0.5, 1.0, i, cfg.points);
    const double disc = 1.0 - 2.0 * std::sqrt(tau * (1.0 - tau));
    if (disc <= 0.0) continue;
    push("r_min_bound", -1.0, -1.0, tau, -0.5 * std::log(disc));
  }
  return rows;
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::string& x_name, std::ostream& os) {
  os << "curve_id," << x_name << ",value\n";
  for (const SweepRow& row : rows)
    os << row.metric << ',' << format_sig12(row.x) << ','
       << format_sig12(row.closed_form) << '\n';
}

double max_oracle_deviation(const std::vector<SweepRow>& rows) {
  double d = 0.0;
  for (const SweepRow& row : rows)
    if (row.abs_diff) d = std::max(d, *row.abs_diff);
  return d;
}

}  // namespace cvt
