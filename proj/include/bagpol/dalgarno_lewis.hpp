#pragma once

// Dalgarno-Lewis route to the same second-order shifts: solve the
// inhomogeneous equation (H0 - eps) psi1 = -V psi0 in closed form inside the
// bag, then read off eps(2) either from the closed-form expression or from
// the overlap quadrature eps(2) = lambda * int x (u0 u1 + v0 v1) dx. The two
// evaluations are kept side by side; their relative disagreement is a live
// diagnostic for transcription errors.
//
// The first-order components used here satisfy the equation residual
// identically for either parity and both energy signs (the free coefficient g
// multiplies the opposite-type homogeneous solution and is fixed by the wall
// condition v1(a) = -u1(a)); in particular v1 does NOT vanish at m = 0 even
// though the shift itself does.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bagpol/matrix_elements.hpp"
#include "bagpol/perturbation.hpp"
#include "bagpol/quadrature.hpp"
#include "bagpol/spectrum.hpp"

namespace bagpol {

// First-order spinor correction, zero outside the bag like the zeroth order.
inline Spinor dl_correction(const Level& level, const BagModel& model, const Perturbation& pert,
                            double x) {
  if (std::abs(x) > model.a) return {0.0, 0.0};
  const double eta = level.parity == Parity::even ? 1.0 : -1.0;
  const double k = level.k, eps = level.eps, m = model.m, a = model.a;
  const double cp = level.parity == Parity::even ? std::cos(k * x) : std::sin(k * x);
  const double sp = level.parity == Parity::even ? std::sin(k * x) : std::cos(k * x);
  const double g = -(eta * m * k / (2.0 * eps)) * (1.0 / (eps + m) + 2.0 * a);
  const double x2a2 = x * x - a * a;
  const double pre = pert.lambda * level.norm / (2.0 * k * k);
  const double u1 = pre * (m * x * cp + (eta * eps * k * x2a2 + g) * sp);
  const double v1 = pre / (eps + m) * ((m + eta * g * k + eps * k * k * x2a2) * cp + eta * k * m * x * sp);
  return {u1, v1};
}

// Bundled view of one level's correction, evaluable anywhere in the bag.
struct DLCorrection {
  Level level;
  BagModel model;
  Perturbation pert;
  double eta;

  DLCorrection(const Level& lv, const BagModel& mo, const Perturbation& pe)
      : level(lv), model(mo), pert(pe), eta(lv.parity == Parity::even ? 1.0 : -1.0) {}

  double u1(double x) const { return dl_correction(level, model, pert, x).u; }
  double v1(double x) const { return dl_correction(level, model, pert, x).v; }
};

struct DLShift {
  double closed_form = 0.0;      // physical energy units
  double quadrature = 0.0;       // physical energy units
  double rel_disagreement = 0.0;
};

namespace detail {

// Dimensionless closed-form shift w (physical shift = w * lambda^2 a^3) as a
// function of M = m*a, K = k*a, Ea = eps*a (signed). The two bracket terms
// stay within a factor of a few of each other at large M, so plain double
// evaluation holds the 1e-8 duality tolerance.
inline double dl_dimensionless(double M, double K, double Ea) {
  const double K2 = K * K;
  const double num =
      M * (2.0 * K2 * (M + 3.0) * (4.0 * Ea * Ea - 6.0 * M - 3.0) - 15.0 * M * M * (2.0 * M + 1.0));
  const double den = 24.0 * K2 * K2 * Ea * (2.0 * Ea * Ea + M);
  return num / den;
}

// Gauss-Legendre resolves the duality integrand (frequencies up to 2k) only
// when the order comfortably exceeds the phase 2ka; deep levels need larger
// rules than the shared one. Cached per power-of-two order; single-threaded.
inline const GaussLegendre& quadrature_rule(double ka) {
  const double needed = 2.0 * std::abs(ka) + 32.0;
  if (needed <= GaussLegendre::shared().order()) return GaussLegendre::shared();
  int order = 256;
  while (order < needed) order *= 2;
  static std::map<int, GaussLegendre> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, GaussLegendre(order)).first;
  return it->second;
}

}  // namespace detail

inline DLShift dl_shift_detail(const Level& level, const BagModel& model, const Perturbation& pert) {
  const double a3 = model.a * model.a * model.a;
  const double scale = pert.lambda * pert.lambda * a3;
  DLShift r;
  r.closed_form =
      detail::dl_dimensionless(model.m * model.a, level.k * model.a, level.eps * model.a) * scale;
  r.quadrature = pert.lambda * detail::quadrature_rule(level.k * model.a).integrate(
                                   [&](double x) {
                                     const Spinor p0 = wavefunction(level, model, x);
                                     const Spinor p1 = dl_correction(level, model, pert, x);
                                     return x * (p0.u * p1.u + p0.v * p1.v);
                                   },
                                   -model.a, model.a);
  const double denom =
      std::max({std::abs(r.closed_form), std::abs(r.quadrature), 1e-8 * std::abs(scale)});
  r.rel_disagreement = denom == 0.0 ? 0.0 : std::abs(r.closed_form - r.quadrature) / denom;
  return r;
}

inline double dl_shift(const Level& level, const BagModel& model, const Perturbation& pert) {
  return dl_shift_detail(level, model, pert).closed_form;
}

inline ShiftReport dl_total(const BagModel& model, const Perturbation& pert, const Truncation& trunc) {
  trunc.validate();
  const Level target0 = solve_level(model, Parity::even, Sign::positive, 0);
  const DLShift bound_detail = dl_shift_detail(target0, model, pert);
  const LevelShiftResult bound{bound_detail.closed_form, 0.0};
  double max_disagreement = bound_detail.rel_disagreement;

  const auto sea = enumerate_levels(model, 2 * trunc.n_max, Sign::negative);
  std::vector<std::string> labels;
  std::vector<LevelShiftResult> vac;
  labels.reserve(sea.size());
  vac.reserve(sea.size());
  for (const Level& lv : sea) {
    const DLShift d = dl_shift_detail(lv, model, pert);
    max_disagreement = std::max(max_disagreement, d.rel_disagreement);
    vac.push_back({d.closed_form, 0.0});
    labels.push_back(label(lv));
  }
  ShiftReport r =
      detail::assemble_report(Method::dalgarno_lewis, model, pert, trunc, bound, labels, vac, 3.0);
  r.dl_max_disagreement = max_disagreement;
  return r;
}

// Nonrelativistic limit of the ground-state shift: the infinite-well value
// lambda^2 m [4(ka)^2 - 15] / (24 k^4) at ka = pi/2.
inline double nonrel_shift(const BagModel& model, const Perturbation& pert) {
  if (model.m == 0.0)
    throw std::invalid_argument("nonrel_shift: defined only for m > 0 (heavy-mass limit)");
  const double k = pi / (2.0 * model.a);
  const double ka = k * model.a;
  const double k2 = k * k;
  return pert.lambda * pert.lambda * model.m * (4.0 * ka * ka - 15.0) / (24.0 * k2 * k2);
}

}  // namespace bagpol
