#pragma once

// Dipole matrix elements of V(x) = lambda*x between bag eigenstates. The
// integrands are trigonometric polynomials times x, so the element reduces to
//
//   <odd|V|even> = lambda*N_e*N_o/2 * [ S(k_o+k_e)(1 - C) + S(k_o-k_e)(1 + C) ],
//   C = k_e*k_o / ((eps_e+m)(eps_o+m)),     S(q) = int_{-a}^{a} x sin(qx) dx,
//
// evaluated from the exact antiderivative (a power series branch keeps S
// accurate for small |q|a, including q = 0 for mirror-partner pairs). Equal
// parities give exactly zero by symmetry of the integrand.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "bagpol/spectrum.hpp"

namespace bagpol {

// Linear-potential coupling; optionally tagged with the charge/field pair
// that produced it, lambda = -q*E.
struct Perturbation {
  double lambda = 0.0;
  std::optional<double> q;
  std::optional<double> e_field;

  static Perturbation from_lambda(double lam) {
    if (!std::isfinite(lam)) throw std::invalid_argument("Perturbation: lambda must be finite");
    return Perturbation{lam, std::nullopt, std::nullopt};
  }

  static Perturbation from_field(double charge, double field) {
    if (!std::isfinite(charge) || !std::isfinite(field))
      throw std::invalid_argument("Perturbation: charge and field must be finite");
    return Perturbation{-charge * field, charge, field};
  }
};

namespace detail {

// S(q) = int_{-a}^{a} x sin(qx) dx = 2(sin(qa) - qa cos(qa))/q^2, odd in q.
// For small |qa| the closed form cancels catastrophically; a 5-term series
// keeps full precision through the switchover at |qa| = 1/4.
inline double dipole_integral(double q, double a) {
  const double t = q * a;
  if (std::abs(t) < 0.25) {
    const double t2 = t * t;
    return 2.0 * a * a * a * q *
           (1.0 / 3.0 +
            t2 * (-1.0 / 30.0 +
                  t2 * (1.0 / 840.0 + t2 * (-1.0 / 45360.0 + t2 / 3991680.0))));
  }
  return 2.0 * (std::sin(t) - t * std::cos(t)) / (q * q);
}

}  // namespace detail

// <level_b|V|level_a>; exactly zero for equal parities. Symmetric in its two
// level arguments (real representation), so hermiticity is structural.
inline double dipole_element(const Level& level_a, const Level& level_b,
                             const Perturbation& pert, const BagModel& model) {
  if (level_a.parity == level_b.parity) return 0.0;
  const Level& le = (level_a.parity == Parity::even) ? level_a : level_b;
  const Level& lo = (level_a.parity == Parity::even) ? level_b : level_a;
  const double cross = le.k * lo.k / ((le.eps + model.m) * (lo.eps + model.m));
  const double plus = detail::dipole_integral(lo.k + le.k, model.a);
  const double minus = detail::dipole_integral(lo.k - le.k, model.a);
  return pert.lambda * le.norm * lo.norm * 0.5 * (plus * (1.0 - cross) + minus * (1.0 + cross));
}

// Massless shortcut: |<b|V|a>| = |lambda| / (a (eps - eps')^2) for opposite
// parities. Magnitude only; rejects inputs outside its domain.
inline double dipole_element_massless(const Level& level_a, const Level& level_b,
                                      const Perturbation& pert, const BagModel& model) {
  if (model.m != 0.0)
    throw std::invalid_argument("dipole_element_massless: requires a massless model");
  if (level_a.parity == level_b.parity)
    throw std::invalid_argument(
        "dipole_element_massless: equal parities have zero element; magnitude form does not apply");
  const double de = level_a.eps - level_b.eps;
  if (de == 0.0) throw std::invalid_argument("dipole_element_massless: degenerate pair");
  return std::abs(pert.lambda) / (model.a * de * de);
}

}  // namespace bagpol
