#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cvteleport/analytics.hpp"

namespace cvt {

/// One record of a parameter sweep. `x` is the abscissa written to the CSV
/// (T^2 for fidelity curves, r / T / tau_in for depth curves).
struct SweepRow {
  double r = 0;
  double T = 0;
  double lambda = 0;
  double nbar = 0;
  std::string metric;
  double x = 0;
  double closed_form = 0;
  std::optional<double> oracle;
  std::optional<double> abs_diff;
};

struct FidelitySweepConfig {
  std::vector<double> r_values = {0.2, 0.7, 2.0};
  double cat_alpha2 = 6.0;
  int fock_n = 6;
  int points = 201;
  bool validate = false;
  int cutoff = 0;      // 0: automatic
  double tol = 1e-3;   // oracle cross-check tolerance
};

/// Fidelity-versus-transmittance curves (direct transmission at T^2 against
/// teleportation per r, for the cat and Fock inputs). With `validate`, five
/// sample points per curve are recomputed through the Fock oracle and the
/// deviations stored on the rows.
std::vector<SweepRow> fidelity_sweep_rows(const FidelitySweepConfig& cfg);

struct DepthSweepConfig {
  int figure = 4;  // 2: depth vs r per T; 4: depth vs T per r + crossover
  double tau_in = 1.0;
  std::vector<double> r_values = {0.2, 0.7, 2.0};
  std::vector<double> T_values = {1.0, 0.9, 0.8, 0.7, 0.6};
  int points = 201;
};

std::vector<SweepRow> depth_sweep_rows(const DepthSweepConfig& cfg);

/// Whether a crossover window can exist at all for this input depth.
bool crossover_possible(double tau_in);

/// CSV with header `curve_id,<x_name>,value`, 12 significant digits,
/// LF line endings; byte-identical across runs for identical rows.
void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::string& x_name, std::ostream& os);

/// Largest oracle deviation recorded on the rows (0 when none).
double max_oracle_deviation(const std::vector<SweepRow>& rows);

std::string format_sig12(double v);

}  // namespace cvt
