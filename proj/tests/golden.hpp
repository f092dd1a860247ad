#pragma once

// Frozen numeric anchors. Every value here was produced by an independent
// long-double generator (tan-form bisection for roots, direct million-term
// series summation smallest-first, closed-form evaluation at those roots)
// and is cross-checked in-test against the same oracles at lower precision.

namespace golden {

// Riemann zeta(5); the bound-level series total times -pi^5/31 reproduces
// this to all printed digits.
inline constexpr double zeta5 = 1.0369277551433699;

// Ground-state root ka of the quantization condition at ma = 1.
inline constexpr double ka_ground_ma1 = 1.1444648640517022;

// Ground-state root and closed-form second-order shift (lambda^2 a^3 units)
// at ma = 3, plus the first even-parity negative-energy level.
inline constexpr double ka_ground_ma3 = 1.3582298738430637;
inline constexpr double dl_ground_ma3 = -0.20309628675389358;
inline constexpr double ka_evenneg_ma3 = 2.7689116356032214;
inline constexpr double dl_evenneg_ma3 = -0.046686394428628627;

// Massless series totals in lambda^2 a^3 units: bound level, vacuum, sum.
// The sum equals -1/(3 pi) to long-double precision.
inline constexpr double w_bound_massless = -0.10504147938064449;
inline constexpr double w_vac_massless = -0.0010618160139524019;
inline constexpr double w_total_massless = -0.10610329539459689;

// Leading-term fraction of the bound-level series.
inline constexpr double first_term_fraction = 0.9954966094753677;

// Polarizability of the massless Pauli-respecting total at q = 1, field = 1.
inline constexpr double polarizability_massless = 0.21220659078919378;

// Nonrelativistic second-order shift per unit mass: (2/3)(pi^2-15)/pi^4.
inline constexpr double nonrel_unit = -0.035112366785284838;

// Ground-state ratio of the closed-form shift to the nonrelativistic one.
inline constexpr double ratio_ma3 = 1.9280603516499372;
inline constexpr double ratio_ma100 = 1.0204526823631034;

}  // namespace golden
