#pragma once

// Second-order energy shifts of the bound-particle-plus-sea system under
// V(x) = lambda*x, by two summation schemes:
//
//   * shift_level_pauli / method_I_total  — intermediate states restricted to
//     unoccupied positive-energy levels (the sea blocks everything else);
//   * shift_level_free  / method_II_total — intermediate states unrestricted,
//     the inner (intermediate) sum completed before the outer (sea level) sum.
//
// Both inner sums are absolutely convergent, so any exhaustive order gives
// the same per-level value; the free sum is evaluated in mirror pairs whose
// members cancel to machine precision at m = 0, which keeps the massless
// nullity visible numerically instead of burying it in cancellation error.
// The methods nevertheless disagree in total: the difference is a
// conditionally convergent double series, demonstrated by rearrangement_demo.

#include <cfloat>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bagpol/matrix_elements.hpp"
#include "bagpol/series.hpp"
#include "bagpol/spectrum.hpp"

namespace bagpol {

// Massless-kernel term of the shift sums: f(x) = -lambda^2 a^3 / (pi^5 x^5),
// odd in x exactly (x^5 is evaluated as (x^2)^2 * x).
inline double kernel_f(double x, const Perturbation& pert, const BagModel& model) {
  if (x == 0.0) throw std::invalid_argument("kernel_f: pole at x = 0");
  const double pi5 = (pi * pi) * (pi * pi) * pi;
  const double x2 = x * x;
  const double x5 = x2 * x2 * x;
  const double a3 = model.a * model.a * model.a;
  return -pert.lambda * pert.lambda * a3 / (pi5 * x5);
}

// Which single-particle levels are filled. The ground configuration is the
// lowest positive level plus the whole negative-energy sea.
struct OccupiedSet {
  bool all_negative = true;
  std::set<std::string> extra;

  static OccupiedSet ground() { return OccupiedSet{true, {"0++"}}; }

  bool contains(const Level& lv) const {
    if (all_negative && lv.sign == Sign::negative) return true;
    return extra.count(label(lv)) > 0;
  }
};

struct LevelShiftResult {
  double shift = 0.0;  // physical energy units
  double tail = 0.0;   // bound on the truncation error, same units
};

enum class Method { pauli, free, dalgarno_lewis, nonrel };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::pauli: return "pauli";
    case Method::free: return "free";
    case Method::dalgarno_lewis: return "dalgarno-lewis";
    case Method::nonrel: return "nonrel";
  }
  return "?";
}

// Decomposed second-order result. All w_* and tail fields are dimensionless
// (in lambda^2 a^3 units); lambda/a/ma echo the inputs that produced them.
struct ShiftReport {
  Method method = Method::pauli;
  double ma = 0.0;
  double a = 1.0;
  double lambda = 1.0;
  int n_max = 0;
  double tail_tol = 0.0;
  double w_bound = 0.0;
  double w_vac = 0.0;
  double w_total = 0.0;
  std::vector<std::pair<std::string, double>> per_level;
  double inner_tail = 0.0;
  double outer_tail = 0.0;
  double tail_estimate = 0.0;
  bool tail_ok = false;
  double dl_max_disagreement = 0.0;  // populated by the Dalgarno-Lewis route
};

namespace detail {

inline Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

// Massless quarter offset of a branch: k*a/pi = n + 1/4 on branches where the
// quantization sign sigma is +1, n + 3/4 where it is -1.
inline double gamma_quarter(Parity p, Sign s) {
  const bool plus = (p == Parity::even) == (s == Sign::positive);
  return plus ? 0.25 : 0.75;
}

inline std::vector<Level> tower(const BagModel& model, Parity p, Sign s, int depth) {
  std::vector<Level> t;
  t.reserve(static_cast<std::size_t>(depth));
  for (int n = 0; n < depth; ++n) t.push_back(solve_level(model, p, s, n));
  return t;
}

inline double shift_term(const Level& target, const Level& inter, const Perturbation& pert,
                         const BagModel& model) {
  const double e = dipole_element(target, inter, pert, model);
  return e * e / (target.eps - inter.eps);
}

// Pauli-respecting sum over unoccupied positive-energy intermediates of the
// opposite parity (same-parity elements vanish identically).
inline LevelShiftResult shift_pauli_with(const BagModel& model, const Perturbation& pert,
                                         const Level& target, const OccupiedSet& occupied,
                                         const Truncation& trunc,
                                         const std::vector<Level>& inter_pos) {
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(trunc.n_max));
  double shift = 0.0, abs_sum = 0.0;
  for (int n = 0; n < trunc.n_max; ++n) {
    const Level& lv = inter_pos[static_cast<std::size_t>(n)];
    if (occupied.contains(lv)) continue;
    const double t = shift_term(target, lv, pert, model);
    terms.push_back(t);
    shift += t;
    abs_sum += std::abs(t);
  }
  double tail = 0.0;
  if (trunc.strategy == TailStrategy::power_law)
    tail = std::max(power_law_tail_bound(terms, 5.0), 32.0 * DBL_EPSILON * abs_sum);
  return {shift, tail};
}

// Unrestricted sum over both towers of the opposite parity, organised as
// mirror pairs (one member per tower) whose massless closed-form arguments
// are exact opposites, plus the finite unpaired block that the index shift
// delta leaves behind. delta is fixed by the target's tower coordinate.
inline LevelShiftResult shift_free_with(const BagModel& model, const Perturbation& pert,
                                        const Level& target, const Truncation& trunc,
                                        const std::vector<Level>& inter_pos,
                                        const std::vector<Level>& inter_neg) {
  const Parity q = opposite(target.parity);
  const double gq = gamma_quarter(q, Sign::positive);
  const double gt = gamma_quarter(target.parity, target.sign);
  const double rho_t = (target.sign == Sign::positive ? 1.0 : -1.0) * (target.n + gt);
  const int delta = static_cast<int>(std::llround(2.0 * gq - 1.0 - 2.0 * rho_t));

  double shift = 0.0, abs_sum = 0.0;
  if (delta > 0) {
    for (int mu = 0; mu < delta; ++mu) {
      const double t = shift_term(target, inter_neg[static_cast<std::size_t>(mu)], pert, model);
      shift += t;
      abs_sum += std::abs(t);
    }
  } else {
    for (int nu = 0; nu < -delta; ++nu) {
      const double t = shift_term(target, inter_pos[static_cast<std::size_t>(nu)], pert, model);
      shift += t;
      abs_sum += std::abs(t);
    }
  }

  std::vector<double> pairs;
  pairs.reserve(static_cast<std::size_t>(trunc.n_max));
  for (int nu = 0; nu < trunc.n_max; ++nu) {
    const std::size_t ip = static_cast<std::size_t>(delta >= 0 ? nu : nu - delta);
    const std::size_t in = static_cast<std::size_t>(delta >= 0 ? nu + delta : nu);
    const double tp = shift_term(target, inter_pos[ip], pert, model);
    const double tn = shift_term(target, inter_neg[in], pert, model);
    pairs.push_back(tp + tn);
    shift += tp + tn;
    abs_sum += std::abs(tp) + std::abs(tn);
  }
  double tail = 0.0;
  if (trunc.strategy == TailStrategy::power_law)
    tail = std::max(power_law_tail_bound(pairs, 5.0), 32.0 * DBL_EPSILON * abs_sum);
  return {shift, tail};
}

inline int free_depth_pos(const Level& target, const Truncation& trunc) {
  const double gq = gamma_quarter(opposite(target.parity), Sign::positive);
  const double gt = gamma_quarter(target.parity, target.sign);
  const double rho_t = (target.sign == Sign::positive ? 1.0 : -1.0) * (target.n + gt);
  const int delta = static_cast<int>(std::llround(2.0 * gq - 1.0 - 2.0 * rho_t));
  return trunc.n_max + std::max(0, -delta);
}

inline int free_depth_neg(const Level& target, const Truncation& trunc) {
  const double gq = gamma_quarter(opposite(target.parity), Sign::positive);
  const double gt = gamma_quarter(target.parity, target.sign);
  const double rho_t = (target.sign == Sign::positive ? 1.0 : -1.0) * (target.n + gt);
  const int delta = static_cast<int>(std::llround(2.0 * gq - 1.0 - 2.0 * rho_t));
  return trunc.n_max + std::max(0, delta);
}

}  // namespace detail

inline LevelShiftResult shift_level_pauli_detail(const BagModel& model, const Perturbation& pert,
                                                 const Level& target, const OccupiedSet& occupied,
                                                 const Truncation& trunc) {
  trunc.validate();
  if (!occupied.contains(target))
    throw std::invalid_argument("shift_level_pauli: target level must be occupied");
  const auto inter = detail::tower(model, detail::opposite(target.parity), Sign::positive, trunc.n_max);
  return detail::shift_pauli_with(model, pert, target, occupied, trunc, inter);
}

inline double shift_level_pauli(const BagModel& model, const Perturbation& pert, const Level& target,
                                const OccupiedSet& occupied, const Truncation& trunc) {
  return shift_level_pauli_detail(model, pert, target, occupied, trunc).shift;
}

inline LevelShiftResult shift_level_free_detail(const BagModel& model, const Perturbation& pert,
                                                const Level& target, const Truncation& trunc) {
  trunc.validate();
  const Parity q = detail::opposite(target.parity);
  const auto pos = detail::tower(model, q, Sign::positive, detail::free_depth_pos(target, trunc));
  const auto neg = detail::tower(model, q, Sign::negative, detail::free_depth_neg(target, trunc));
  return detail::shift_free_with(model, pert, target, trunc, pos, neg);
}

inline double shift_level_free(const BagModel& model, const Perturbation& pert, const Level& target,
                               const Truncation& trunc) {
  return shift_level_free_detail(model, pert, target, trunc).shift;
}

namespace detail {

// Shared assembly of a ShiftReport from the bound-level result and the sea
// levels in enumeration order. outer_p is the decay exponent of the per-level
// sea shifts (4 for the Pauli-respecting sums, 3 for the free sums).
inline ShiftReport assemble_report(Method method, const BagModel& model, const Perturbation& pert,
                                   const Truncation& trunc, const LevelShiftResult& bound,
                                   const std::vector<std::string>& vac_labels,
                                   const std::vector<LevelShiftResult>& vac, double outer_p) {
  double scale = pert.lambda * pert.lambda * model.a * model.a * model.a;
  if (scale == 0.0) scale = 1.0;

  ShiftReport r;
  r.method = method;
  r.ma = model.m * model.a;
  r.a = model.a;
  r.lambda = pert.lambda;
  r.n_max = trunc.n_max;
  r.tail_tol = trunc.tail_tol;

  r.per_level.emplace_back("0++", bound.shift / scale);
  double w_vac = 0.0, inner = bound.tail;
  std::vector<double> outer_terms;
  outer_terms.reserve(vac.size());
  for (std::size_t i = 0; i < vac.size(); ++i) {
    outer_terms.push_back(vac[i].shift);
    w_vac += vac[i].shift;
    inner += vac[i].tail;
    r.per_level.emplace_back(vac_labels[i], vac[i].shift / scale);
  }
  const double outer = tail_bound(outer_terms, outer_p, trunc.strategy);

  r.w_bound = bound.shift / scale;
  r.w_vac = w_vac / scale;
  r.w_total = r.w_bound + r.w_vac;
  r.inner_tail = inner / scale;
  r.outer_tail = outer / scale;
  r.tail_estimate = r.inner_tail + r.outer_tail;
  r.tail_ok = r.tail_estimate <= trunc.tail_tol;
  return r;
}

}  // namespace detail

inline ShiftReport method_I_total(const BagModel& model, const Perturbation& pert,
                                  const Truncation& trunc) {
  trunc.validate();
  const OccupiedSet occ = OccupiedSet::ground();
  const auto even_pos = detail::tower(model, Parity::even, Sign::positive, trunc.n_max);
  const auto odd_pos = detail::tower(model, Parity::odd, Sign::positive, trunc.n_max);
  const Level target0 = even_pos[0];
  const LevelShiftResult bound =
      detail::shift_pauli_with(model, pert, target0, occ, trunc, odd_pos);

  const auto sea = enumerate_levels(model, 2 * trunc.n_max, Sign::negative);
  std::vector<std::string> labels;
  std::vector<LevelShiftResult> vac;
  labels.reserve(sea.size());
  vac.reserve(sea.size());
  for (const Level& lv : sea) {
    const auto& inter = lv.parity == Parity::even ? odd_pos : even_pos;
    vac.push_back(detail::shift_pauli_with(model, pert, lv, occ, trunc, inter));
    labels.push_back(label(lv));
  }
  return detail::assemble_report(Method::pauli, model, pert, trunc, bound, labels, vac, 4.0);
}

inline ShiftReport method_II_total(const BagModel& model, const Perturbation& pert,
                                   const Truncation& trunc) {
  trunc.validate();
  // Deep enough for every target's shifted pairing: |delta| <= 2*n_max.
  const int depth = 3 * trunc.n_max + 2;
  const auto even_pos = detail::tower(model, Parity::even, Sign::positive, depth);
  const auto even_neg = detail::tower(model, Parity::even, Sign::negative, depth);
  const auto odd_pos = detail::tower(model, Parity::odd, Sign::positive, depth);
  const auto odd_neg = detail::tower(model, Parity::odd, Sign::negative, depth);
  const Level target0 = even_pos[0];
  const LevelShiftResult bound =
      detail::shift_free_with(model, pert, target0, trunc, odd_pos, odd_neg);

  const auto sea = enumerate_levels(model, 2 * trunc.n_max, Sign::negative);
  std::vector<std::string> labels;
  std::vector<LevelShiftResult> vac;
  labels.reserve(sea.size());
  vac.reserve(sea.size());
  for (const Level& lv : sea) {
    const auto& pos = lv.parity == Parity::even ? odd_pos : even_pos;
    const auto& neg = lv.parity == Parity::even ? odd_neg : even_neg;
    vac.push_back(detail::shift_free_with(model, pert, lv, trunc, pos, neg));
    labels.push_back(label(lv));
  }
  return detail::assemble_report(Method::free, model, pert, trunc, bound, labels, vac, 3.0);
}

// ---------------------------------------------------------------------------
// Rearrangement demonstrator for the conditionally convergent double series
//   sum_{n,n'} [ f(n-n'+1/2) + f(n-n'-1/2) ]  =  sum over cells of B(n-n'),
// whose value depends on the traversal of the (n, n') lattice.

enum class PairingKind { row_pairs, column_pairs, n_prime_first, n_first, diagonal_band };

struct PairingScheme {
  PairingKind kind = PairingKind::row_pairs;
  int band = 1;  // diagonal offset for diagonal_band
};

struct RearrangementTrace {
  std::vector<double> partial_sums;  // physical energy units
  double limit_estimate = 0.0;
  double tail_estimate = 0.0;
  bool convergent = true;
};

inline RearrangementTrace rearrangement_demo(const Perturbation& pert, const BagModel& model,
                                             const PairingScheme& scheme, int terms) {
  if (model.m != 0.0)
    throw std::invalid_argument("rearrangement_demo: closed kernel requires a massless model");
  if (terms < 1) throw std::invalid_argument("rearrangement_demo: terms must be >= 1");
  if (scheme.kind == PairingKind::diagonal_band && scheme.band < 1)
    throw std::invalid_argument("rearrangement_demo: band must be >= 1");

  // Per-cell value; B is odd and B(0) = 0 exactly.
  const auto cell = [&](long long d) {
    return kernel_f(static_cast<double>(d) + 0.5, pert, model) +
           kernel_f(static_cast<double>(d) - 0.5, pert, model);
  };
  // Off-lattice remainder of a one-sided cell sum after this many terms is
  // below 1e-19 in lambda^2 a^3 units (terms decay like d^-5).
  const long long cut = 12000;

  RearrangementTrace tr;
  tr.partial_sums.reserve(static_cast<std::size_t>(terms));
  double run = 0.0;
  std::vector<double> increments;

  switch (scheme.kind) {
    case PairingKind::row_pairs: {
      // Anti-diagonal sweep pairing each cell (n, n') with its transpose:
      // every group contributes B(d) + B(-d) = 0 exactly.
      int emitted = 0;
      for (long long s = 0; emitted < terms; ++s) {
        for (long long d = s % 2; d <= s && emitted < terms; d += 2) {
          run += d == 0 ? cell(0) : cell(d) + cell(-d);
          tr.partial_sums.push_back(run);
          ++emitted;
        }
      }
      tr.limit_estimate = run;
      tr.tail_estimate = 0.0;
      break;
    }
    case PairingKind::column_pairs: {
      // Within row n, cells n' = n-j and n' = n+j cancel exactly; what is
      // recorded per row is the unpaired block n' > 2n, summed smallest-first.
      for (int n = 0; n < terms; ++n) {
        double orphan = 0.0;
        for (long long np = 2LL * n + cut; np >= 2LL * n + 1; --np) orphan += cell(n - np);
        run += orphan;
        increments.push_back(orphan);
        tr.partial_sums.push_back(run);
      }
      tr.limit_estimate = run;
      tr.tail_estimate = power_law_tail_bound(increments, 4.0);
      break;
    }
    case PairingKind::n_prime_first: {
      // Complete each row's absolutely convergent n' sum before moving down:
      // row n equals -sum_{d>n} B(d) since the full odd B-sum vanishes.
      for (int n = 0; n < terms; ++n) {
        double row = 0.0;
        for (long long d = n + cut; d >= n + 1; --d) row -= cell(d);
        run += row;
        increments.push_back(row);
        tr.partial_sums.push_back(run);
      }
      tr.limit_estimate = run;
      tr.tail_estimate = power_law_tail_bound(increments, 4.0);
      break;
    }
    case PairingKind::n_first: {
      // Column sums instead: column n' equals +sum_{d>n'} B(d) < 0.
      for (int np = 0; np < terms; ++np) {
        double col = 0.0;
        for (long long d = np + cut; d >= np + 1; --d) col += cell(d);
        run += col;
        increments.push_back(col);
        tr.partial_sums.push_back(run);
      }
      tr.limit_estimate = run;
      tr.tail_estimate = power_law_tail_bound(increments, 4.0);
      break;
    }
    case PairingKind::diagonal_band: {
      // Alternate between the +band and -band diagonals: the partial sums
      // oscillate B, 0, B, 0, ... and never settle.
      for (int i = 0; i < terms; ++i) {
        run += i % 2 == 0 ? cell(scheme.band) : cell(-scheme.band);
        tr.partial_sums.push_back(run);
      }
      tr.limit_estimate = std::numeric_limits<double>::quiet_NaN();
      tr.tail_estimate = std::numeric_limits<double>::quiet_NaN();
      tr.convergent = false;
      break;
    }
  }
  return tr;
}

// P in W = -(1/2) P E^2, from a report computed with lambda = -q*E.
inline double polarizability(const ShiftReport& report, const Perturbation& pert) {
  if (!pert.q.has_value() || !pert.e_field.has_value())
    throw std::invalid_argument("polarizability: perturbation must carry charge and field");
  const double field = *pert.e_field;
  if (field == 0.0) throw std::invalid_argument("polarizability: field must be nonzero");
  const double w_phys =
      report.w_total * report.lambda * report.lambda * report.a * report.a * report.a;
  return -2.0 * w_phys / (field * field);
}

}  // namespace bagpol
