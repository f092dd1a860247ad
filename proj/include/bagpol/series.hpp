#pragma once

// Truncation policy and a-posteriori tail estimates for the slowly convergent
// level sums. Terms here decay like a power n^{-p}, so the remainder after n
// terms is bounded by integrating the envelope C*x^{-p} fitted to the
// computed tail of the sequence. A floating-point floor keeps the bound
// meaningful when the true terms have cancelled down to roundoff noise.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bagpol {

enum class TailStrategy { power_law, none };

struct Truncation {
  int n_max = 200;
  double tail_tol = 1e-10;
  TailStrategy strategy = TailStrategy::power_law;

  void validate() const {
    if (n_max < 1) throw std::invalid_argument("Truncation: n_max must be >= 1");
    if (!(tail_tol > 0.0) || !std::isfinite(tail_tol))
      throw std::invalid_argument("Truncation: tail_tol must be positive and finite");
  }
};

// Upper bound on |sum_{i>n} t_i| for |t_i| <~ C/i^p with p > 1. C is fitted
// over the last nine tenths of the computed terms (1-based index i), and the
// integral bound sum_{i>n} C i^{-p} <= C n^{1-p}/(p-1) is doubled for safety.
// The additive floor covers sequences that have hit roundoff.
inline double power_law_tail_bound(const std::vector<double>& terms, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("power_law_tail_bound: need p > 1");
  if (terms.empty()) return 0.0;
  const std::size_t n = terms.size();
  const std::size_t start = std::max<std::size_t>(1, n / 10);
  double c = 0.0, abs_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) abs_sum += std::abs(terms[i]);
  for (std::size_t i = start; i <= n; ++i)
    c = std::max(c, std::abs(terms[i - 1]) * std::pow(static_cast<double>(i), p));
  const double bound = 2.0 * c * std::pow(static_cast<double>(n), 1.0 - p) / (p - 1.0);
  const double fp_floor = 32.0 * DBL_EPSILON * abs_sum;
  return std::max(bound, fp_floor);
}

inline double tail_bound(const std::vector<double>& terms, double p, TailStrategy strategy) {
  return strategy == TailStrategy::power_law ? power_law_tail_bound(terms, p) : 0.0;
}

}  // namespace bagpol
