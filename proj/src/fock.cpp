#include "cvteleport/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace cvt {

namespace {

void check_dim(int dim) {
  if (dim < 2) throw InvalidSpec("fock dimension must be >= 2");
}

/// Smallest N with tail_ratio^N <= 1e-9; used for geometrically decaying
/// number distributions (thermal, squeezed vacuum).
int geometric_cutoff(double tail_ratio) {
  if (tail_ratio <= 0.0) return 2;
  return static_cast<int>(std::ceil(std::log(1e-9) / std::log(tail_ratio))) + 2;
}

}  // namespace

double DensityMatrix::purity() const {
  return (elems * elems).trace().real();
}

double DensityMatrix::mean_photons() const {
  double mu = 0.0;
  for (int n = 0; n < dim(); ++n) mu += n * elems(n, n).real();
  return mu;
}

double DensityMatrix::hermiticity_defect() const {
  return (elems - elems.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(elems, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

StateSpec StateSpec::make_coherent(Complex alpha) {
  StateSpec s;
  s.kind = StateKind::coherent;
  s.amplitude = alpha;
  return s;
}

StateSpec StateSpec::make_fock(int n) {
  if (n < 0) throw InvalidSpec("fock photon number must be >= 0");
  StateSpec s;
  s.kind = StateKind::fock;
  s.photon_number = n;
  return s;
}

StateSpec StateSpec::make_cat(Complex alpha) {
  // The alpha -> 0 cat has no defined limit here; tiny amplitudes are
  // rejected rather than guessing a convention.
  if (std::abs(alpha) < 1e-3) throw InvalidSpec("cat amplitude below 1e-3");
  StateSpec s;
  s.kind = StateKind::cat;
  s.amplitude = alpha;
  return s;
}

StateSpec StateSpec::make_squeezed(Complex xi) {
  StateSpec s;
  s.kind = StateKind::squeezed_vacuum;
  s.squeezing = xi;
  return s;
}

StateSpec StateSpec::make_thermal(double nbar) {
  if (nbar < 0.0) throw InvalidSpec("thermal mean photon number must be >= 0");
  StateSpec s;
  s.kind = StateKind::thermal;
  s.mean_thermal = nbar;
  return s;
}

double StateSpec::mean_photon_number() const {
  switch (kind) {
    case StateKind::coherent:
      return std::norm(amplitude);
    case StateKind::fock:
      return photon_number;
    case StateKind::cat: {
      const double a2 = std::norm(amplitude);
      return a2 / std::tanh(a2);  // odd cat
    }
    case StateKind::squeezed_vacuum: {
      const double s = std::abs(squeezing);
      return std::sinh(s) * std::sinh(s);
    }
    case StateKind::thermal:
      return mean_thermal;
  }
  throw InvalidSpec("unknown state kind");
}

int tail_cutoff(double mean_photons) {
  return static_cast<int>(
      std::ceil(mean_photons + 6.0 * std::sqrt(mean_photons + 1.0) + 10.0));
}

int default_cutoff(const StateSpec& spec) {
  const int poisson = tail_cutoff(spec.mean_photon_number());
  switch (spec.kind) {
    case StateKind::thermal: {
      const double nb = spec.mean_thermal;
      return std::max(poisson, geometric_cutoff(nb / (1.0 + nb)));
    }
    case StateKind::squeezed_vacuum: {
      // occupation decays by tanh^2 per photon pair
      const double t = std::tanh(std::abs(spec.squeezing));
      return std::max(poisson, 2 * geometric_cutoff(t * t) + 2);
    }
    default:
      return poisson;
  }
}

Vector state_vector(const StateSpec& spec, int dim) {
  check_dim(dim);
  Vector v = Vector::Zero(dim);
  switch (spec.kind) {
    case StateKind::coherent: {
      const Complex a = spec.amplitude;
      v(0) = std::exp(-0.5 * std::norm(a));
      for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * a / std::sqrt(double(n));
      break;
    }
    case StateKind::fock: {
      if (spec.photon_number >= dim)
        throw CutoffTooSmall("fock state outside cutoff");
      v(spec.photon_number) = 1.0;
      break;
    }
    case StateKind::cat: {
      // (|a> - |-a>) / sqrt(2 (1 - e^{-2|a|^2})): odd photon numbers only.
      const Complex a = spec.amplitude;
      const double a2 = std::norm(a);
      const double norm = std::sqrt(2.0 * (1.0 - std::exp(-2.0 * a2)));
      Complex c = std::exp(-0.5 * a2);
      for (int n = 1; n < dim; ++n) {
        c *= a / std::sqrt(double(n));
        if (n % 2 == 1) v(n) = 2.0 * c / norm;
      }
      break;
    }
    case StateKind::squeezed_vacuum: {
      const double s = std::abs(spec.squeezing);
      const Complex phase =
          (s == 0.0) ? Complex(1, 0) : spec.squeezing / Complex(s, 0);
      const Complex factor = -phase * std::tanh(s);
      v(0) = 1.0 / std::sqrt(std::cosh(s));
      // c_{2m+2} = c_{2m} * factor * sqrt((2m+1)(2m+2)) / (2(m+1))
      Complex c = v(0);
      for (int m = 0; 2 * m + 2 < dim; ++m) {
        c *= factor * std::sqrt(double(2 * m + 1) * double(2 * m + 2)) /
             (2.0 * (m + 1));
        v(2 * m + 2) = c;
      }
      break;
    }
    case StateKind::thermal:
      throw InvalidSpec("thermal state has no state vector");
  }
  return v;
}

DensityMatrix build_state(const StateSpec& spec, int dim) {
  check_dim(dim);
  if (spec.kind == StateKind::coherent || spec.kind == StateKind::cat) {
    const double amod = std::abs(spec.amplitude);
    if (amod * amod + 6.0 * amod + 10.0 > dim)
      throw CutoffTooSmall("coherent amplitude tail exceeds cutoff " +
                           std::to_string(dim));
  }
  DensityMatrix rho;
  if (spec.kind == StateKind::thermal) {
    const double nb = spec.mean_thermal;
    rho.elems = Matrix::Zero(dim, dim);
    double w = 1.0 / (1.0 + nb);
    const double ratio = nb / (1.0 + nb);
    for (int n = 0; n < dim; ++n) {
      rho.elems(n, n) = w;
      w *= ratio;
    }
  } else {
    const Vector v = state_vector(spec, dim);
    rho.elems = v * v.adjoint();
  }
  if (std::abs(rho.trace_real() - 1.0) > kTailTolerance)
    throw CutoffTooSmall("state tail mass above tolerance at cutoff " +
                         std::to_string(dim));
  return rho;
}

Matrix annihilation_operator(int dim) {
  check_dim(dim);
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Matrix displacement_matrix(Complex alpha, int dim) {
  check_dim(dim);
  if (std::norm(alpha) > dim / 4.0)
    throw CutoffTooSmall("displacement amplitude too large for cutoff");
  const Matrix a = annihilation_operator(dim);
  const Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

double fidelity(const DensityMatrix& pure, const DensityMatrix& mixed) {
  if (pure.dim() != mixed.dim()) throw DimMismatch("fidelity: dims differ");
  if (pure.purity() < 1.0 - 1e-6)
    throw NotPure("fidelity: first argument is not pure");
  const Complex tr = pure.elems.cwiseProduct(mixed.elems.transpose()).sum();
  double f = tr.real();
  if (f < 0.0) f = 0.0;
  if (f > 1.0) f = 1.0;
  return f;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimMismatch("trace_distance: dims differ");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.elems - b.elems,
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace cvt
