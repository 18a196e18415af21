#pragma once

#include <utility>
#include <vector>

namespace cvt {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// Same rule mapped to [a, b].
GaussLegendreRule gauss_legendre(int n, double a, double b);

/// Legendre polynomial P_n(x) by the three-term recurrence.
/// Valid for any real x (the recurrence is stable for |x| >= 1).
double legendre_p(int n, double x);

double log_factorial(int n);
double log_binomial(int n, int k);

}  // namespace cvt
