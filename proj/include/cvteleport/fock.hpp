#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cvteleport/errors.hpp"

namespace cvt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// |Tr rho - 1| above this raises CutoffTooSmall instead of renormalizing.
inline constexpr double kTailTolerance = 1e-8;

/// Density operator on a truncated Fock space, stored dense.
/// Valid instances are Hermitian (1e-10), unit trace (kTailTolerance) and
/// positive semidefinite (eigenvalues >= -1e-8).
struct DensityMatrix {
  Matrix elems;

  int dim() const { return static_cast<int>(elems.rows()); }
  double trace_real() const { return elems.trace().real(); }
  double purity() const;
  double mean_photons() const;
  double hermiticity_defect() const;  // max |rho_mn - conj(rho_nm)|
  double min_eigenvalue() const;
};

enum class StateKind { coherent, fock, cat, squeezed_vacuum, thermal };

/// Symbolic input-state descriptor shared by the analytic and numeric paths.
/// Only the fields relevant to `kind` are meaningful.
struct StateSpec {
  StateKind kind = StateKind::coherent;
  Complex amplitude{};     // coherent / cat
  int photon_number = 0;   // fock
  Complex squeezing{};     // squeezed_vacuum, xi = s e^{i theta}
  double mean_thermal = 0; // thermal

  static StateSpec make_coherent(Complex alpha);
  static StateSpec make_fock(int n);
  static StateSpec make_cat(Complex alpha);
  static StateSpec make_squeezed(Complex xi);
  static StateSpec make_thermal(double nbar);

  double mean_photon_number() const;
  bool is_pure() const { return kind != StateKind::thermal || mean_thermal == 0.0; }
};

/// Smallest cutoff with sub-1e-8 occupation tail for a state of the given
/// mean photon number and Poisson-like number statistics.
int tail_cutoff(double mean_photons);

/// Default cutoff for a spec. Uses tail_cutoff plus a geometric-tail bound
/// for the thermal and squeezed kinds, whose number distributions decay
/// slower than Poisson.
int default_cutoff(const StateSpec& spec);

/// State vector of a pure spec (coherent, fock, cat, squeezed_vacuum).
Vector state_vector(const StateSpec& spec, int dim);

DensityMatrix build_state(const StateSpec& spec, int dim);

Matrix annihilation_operator(int dim);

/// Truncated displacement operator exp(alpha a^dag - conj(alpha) a).
Matrix displacement_matrix(Complex alpha, int dim);

/// Overlap Tr(pure * mixed) for a pure first argument; clamped to [0, 1].
double fidelity(const DensityMatrix& pure, const DensityMatrix& mixed);

/// (1/2) sum |eigenvalues of a - b| for Hermitian a, b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace cvt
