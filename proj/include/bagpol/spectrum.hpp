#pragma once

// Stationary states of a Dirac particle confined to [-a, a] by an infinite
// Lorentz-scalar wall. In the representation alpha = sigma_y, beta = sigma_z
// everything is real: inside the bag u' = (m+eps)v, v' = (m-eps)u, and the
// wall imposes u(+-a) = -+v(+-a). Bound momenta solve
//
//   tan(ka) = (+-eps + m)/k,   eps = s*sqrt(k^2 + m^2),
//
// with the plus sign for even parity; each (parity, sign, n) branch holds
// exactly one root, bracketed inside a single tangent half-branch.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bagpol {

inline constexpr double pi = 3.14159265358979323846;

enum class Parity { even, odd };
enum class Sign { positive, negative };

struct BagModel {
  double m;  // rest mass (inverse length; hbar = c = 1)
  double a;  // bag half-width

  BagModel(double mass, double half_width) : m(mass), a(half_width) {
    if (!std::isfinite(m) || m < 0.0)
      throw std::invalid_argument("BagModel: mass must be finite and >= 0");
    if (!std::isfinite(a) || a <= 0.0)
      throw std::invalid_argument("BagModel: half-width must be finite and > 0");
  }
};

struct Level {
  int n;          // branch index (0-based) within its (parity, sign) family
  Parity parity;
  Sign sign;
  double k;       // wavenumber, k > 0
  double eps;     // energy; sign matches `sign`, eps^2 = k^2 + m^2
  double norm;    // normalization N > 0
};

// Two-component wavefunction value at a point (real representation).
struct Spinor {
  double u;
  double v;
};

inline char parity_char(Parity p) { return p == Parity::even ? '+' : '-'; }
inline char sign_char(Sign s) { return s == Sign::positive ? '+' : '-'; }

// Level tag in the n^{ps} style: branch index, parity sign, energy sign.
inline std::string label(const Level& lv) {
  std::string out = std::to_string(lv.n);
  out += parity_char(lv.parity);
  out += sign_char(lv.sign);
  return out;
}

namespace detail {

// Root of the quantization condition in units of the half-width: K = ka for
// the (parity, sign, n) branch, at dimensionless mass M = ma. Written in the
// branch offset phi = K - n*pi with the pole-free residual
//   r(phi) = K*sin(phi) - num(K)*cos(phi),   num = sigma*sqrt(K^2+M^2) + M,
// where sigma = +1 picks the branches whose right-hand side is positive
// (even/positive and odd/negative); those roots live in (n*pi, n*pi + pi/2),
// the sigma = -1 roots in (n*pi + pi/2, (n+1)*pi).
inline double solve_ka(double M, Parity parity, Sign sign, int n) {
  if (n < 0) throw std::invalid_argument("solve_ka: branch index must be >= 0");
  const double s = (sign == Sign::positive) ? 1.0 : -1.0;
  const double sigma = (parity == Parity::even) ? s : -s;

  auto resid = [&](double phi) {
    const double K = n * pi + phi;
    const double num = sigma * std::sqrt(K * K + M * M) + M;
    return K * std::sin(phi) - num * std::cos(phi);
  };

  double lo, hi;
  if (sigma > 0.0) {
    // r < 0 at the branch base, r(pi/2) = K > 0. The base itself is nudged
    // for n = 0: at K -> 0 the massless residual has a spurious zero.
    lo = (n == 0) ? 1e-9 : 0.0;
    hi = 0.5 * pi;
  } else {
    // r(pi/2) = K > 0, r(pi) = num < 0.
    lo = 0.5 * pi;
    hi = pi;
  }
  double flo = resid(lo);
  double fhi = resid(hi);
  if (!(flo == 0.0) && !(fhi == 0.0) && (flo > 0.0) == (fhi > 0.0))
    throw std::runtime_error("solve_ka: quantization bracket failed to straddle a root");

  for (int it = 0; it < 120 && (hi - lo) > 1e-13 * pi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = resid(mid);
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }

  // One Newton polish; the derivative is analytic and pole-free.
  double phi = 0.5 * (lo + hi);
  {
    const double K = n * pi + phi;
    const double root = std::sqrt(K * K + M * M);
    const double num = sigma * root + M;
    const double dnum = sigma * K / root;
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double r = K * sp - num * cp;
    const double dr = sp + K * cp - dnum * cp + num * sp;
    if (dr != 0.0) {
      const double next = phi - r / dr;
      if (std::isfinite(next) && next > lo - (hi - lo) && next < hi + (hi - lo)) phi = next;
    }
  }
  return n * pi + phi;
}

}  // namespace detail

// N^2 = eps(eps+m)/(m + 2a*eps^2); positive for both energy signs because
// |eps| > m whenever k > 0.
inline double level_norm(double eps, const BagModel& model) {
  return std::sqrt(eps * (eps + model.m) / (model.m + 2.0 * model.a * eps * eps));
}

inline Level solve_level(const BagModel& model, Parity parity, Sign sign, int n) {
  if (n < 0) throw std::invalid_argument("solve_level: level index must be >= 0");
  const double K = detail::solve_ka(model.m * model.a, parity, sign, n);
  const double k = K / model.a;
  const double s = (sign == Sign::positive) ? 1.0 : -1.0;
  const double eps = s * std::sqrt(k * k + model.m * model.m);
  return Level{n, parity, sign, k, eps, level_norm(eps, model)};
}

// Massless closed form: ka/pi = n + 1/4 on the even/positive and odd/negative
// branches, n + 3/4 on the other two; eps = +-k and N = 1/sqrt(2a).
inline Level massless_level(double a, Parity parity, Sign sign, int n) {
  if (!std::isfinite(a) || a <= 0.0)
    throw std::invalid_argument("massless_level: half-width must be finite and > 0");
  if (n < 0) throw std::invalid_argument("massless_level: level index must be >= 0");
  const double s = (sign == Sign::positive) ? 1.0 : -1.0;
  const double sigma = (parity == Parity::even) ? s : -s;
  const double quarter = (sigma > 0.0) ? 0.25 : 0.75;
  const double k = (n + quarter) * pi / a;
  const double eps = s * k;
  return Level{n, parity, sign, k, eps, std::sqrt(1.0 / (2.0 * a))};
}

// Spinor value at x; identically zero outside the bag.
inline Spinor wavefunction(const Level& lv, const BagModel& model, double x) {
  if (std::abs(x) > model.a) return Spinor{0.0, 0.0};
  const double c = lv.k / (lv.eps + model.m);
  if (lv.parity == Parity::even)
    return Spinor{lv.norm * std::cos(lv.k * x), -lv.norm * c * std::sin(lv.k * x)};
  return Spinor{lv.norm * std::sin(lv.k * x), lv.norm * c * std::cos(lv.k * x)};
}

// Spectral mirror partner: same k and branch index, parity flipped, energy
// negated. Needs the model because the partner's normalization depends on m.
inline Level mirror(const Level& lv, const BagModel& model) {
  Level out = lv;
  out.parity = (lv.parity == Parity::even) ? Parity::odd : Parity::even;
  out.sign = (lv.sign == Sign::positive) ? Sign::negative : Sign::positive;
  out.eps = -lv.eps;
  out.norm = level_norm(out.eps, model);
  return out;
}

// First `count` levels of one energy sign, ordered by |eps| ascending. The
// parity families interleave strictly: within each branch index the sigma=+1
// root precedes the sigma=-1 root, so no |eps| tie can occur for any m >= 0.
inline std::vector<Level> enumerate_levels(const BagModel& model, int count, Sign sign) {
  if (count < 1) throw std::invalid_argument("enumerate_levels: count must be >= 1");
  std::vector<Level> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int n = i / 2;
    const bool lower_half = (i % 2 == 0);
    Parity p;
    if (sign == Sign::positive)
      p = lower_half ? Parity::even : Parity::odd;
    else
      p = lower_half ? Parity::odd : Parity::even;
    out.push_back(solve_level(model, p, sign, n));
  }
  return out;
}

}  // namespace bagpol
