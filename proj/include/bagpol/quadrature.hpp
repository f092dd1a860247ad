#pragma once

// Fixed-order Gauss-Legendre quadrature. Nodes/weights are computed once per
// rule by Newton iteration on the Legendre polynomial; a shared order-128 rule
// is reused by every module that integrates over the bag so that repeated
// evaluations stay deterministic.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bagpol {

class GaussLegendre {
public:
  explicit GaussLegendre(int order) {
    if (order < 2) throw std::invalid_argument("GaussLegendre: order must be >= 2");
    const int n = order;
    x_.resize(n);
    w_.resize(n);
    const double pi = 3.14159265358979323846;
    // Roots come in +- pairs; solve the upper half and mirror.
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        // Recurrence for P_n(x) and P_{n-1}(x).
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      // One polishing step so the weight uses a fully converged node.
      {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      x_[i] = -x;
      w_[i] = w;
      x_[n - 1 - i] = x;
      w_[n - 1 - i] = w;
    }
  }

  int order() const { return static_cast<int>(x_.size()); }

  template <class F>
  double integrate(F&& f, double lo, double hi) const {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) acc += w_[i] * f(mid + half * x_[i]);
    return acc * half;
  }

  // Rule shared across modules (matrix-element oracle, normalization checks,
  // the first-order-correction overlap integral).
  static const GaussLegendre& shared() {
    static const GaussLegendre rule(128);
    return rule;
  }

private:
  std::vector<double> x_, w_;
};

}  // namespace bagpol
