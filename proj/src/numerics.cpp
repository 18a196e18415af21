#include "cvteleport/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace cvt {

double legendre_p(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_p: negative order");
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double p = x;
  for (int k = 1; k < n; ++k) {
    const double pn = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
    pm1 = p;
    p = pn;
  }
  return p;
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, refined by Newton iteration.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double pm1 = 1.0;
      double p = x;
      for (int k = 1; k < n; ++k) {
        const double pn = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
        pm1 = p;
        p = pn;
      }
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

GaussLegendreRule gauss_legendre(int n, double a, double b) {
  GaussLegendreRule rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double scale = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + scale * rule.nodes[i];
    rule.weights[i] *= scale;
  }
  return rule;
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("log_binomial: k out of range");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace cvt
