#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bagpol/dalgarno_lewis.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace bagpol;

namespace {
const Perturbation kUnit = Perturbation::from_lambda(1.0);

std::vector<double> chebyshev_points(double a, int count) {
  std::vector<double> xs;
  for (int j = 0; j < count; ++j) xs.push_back(a * std::cos(pi * (j + 0.5) / count));
  return xs;
}
}  // namespace

TEST_CASE("hand derivatives of the correction match finite differences") {
  for (double ma : {0.0, 0.5, 3.0})
    for (Parity p : {Parity::even, Parity::odd})
      for (Sign s : {Sign::positive, Sign::negative}) {
        const BagModel model(ma, 1.0);
        const Level lv = solve_level(model, p, s, 1);
        const double h = 1e-6;
        for (double x : {-0.81, -0.33, 0.12, 0.68}) {
          const Spinor hi = dl_correction(lv, model, kUnit, x + h);
          const Spinor lo = dl_correction(lv, model, kUnit, x - h);
          const auto d = oracle::dl_derivatives(lv, model, kUnit.lambda, x);
          REQUIRE(std::abs((hi.u - lo.u) / (2.0 * h) - d.du1) < 1e-6);
          REQUIRE(std::abs((hi.v - lo.v) / (2.0 * h) - d.dv1) < 1e-6);
        }
      }
}

TEST_CASE("first-order equation residual vanishes across the bag") {
  struct Case {
    double ma, a, lambda;
    Parity p;
    Sign s;
    int n;
  };
  const Case cases[] = {
      {0.5, 1.0, 1.0, Parity::even, Sign::positive, 0},
      {1.0, 1.0, 1.0, Parity::even, Sign::positive, 0},
      {3.0, 1.0, 1.0, Parity::even, Sign::positive, 0},
      {1.0, 1.0, 1.0, Parity::odd, Sign::positive, 1},
      {1.0, 1.0, 1.0, Parity::even, Sign::negative, 0},
      {2.0, 1.0, 1.0, Parity::odd, Sign::negative, 2},
      {0.0, 1.0, 1.0, Parity::even, Sign::positive, 0},
      {1.4260, 0.62, 2.3, Parity::even, Sign::positive, 0},  // m = 2.3, scaled bag
  };
  for (const Case& c : cases) {
    const BagModel model(c.ma, c.a);
    const Level lv = solve_level(model, c.p, c.s, c.n);
    const double scale = 1.0 + std::abs(c.lambda) * lv.norm * c.a;
    const Perturbation pert = Perturbation::from_lambda(c.lambda);
    double sup = 0.0;
    for (double x : chebyshev_points(c.a, 64)) {
      const auto r = oracle::dl_equation_residual(lv, model, pert, x);
      sup = std::max({sup, std::abs(r.r_u), std::abs(r.r_v)});
    }
    REQUIRE(sup < 1e-8 * scale);
  }
}

TEST_CASE("corrected spinor satisfies the wall condition order by order") {
  for (double ma : {0.0, 0.5, 1.0, 3.0})
    for (double a : {1.0, 0.62})
      for (Parity p : {Parity::even, Parity::odd})
        for (Sign s : {Sign::positive, Sign::negative})
          for (int n : {0, 1, 2}) {
            const BagModel model(ma / a, a);
            const Level lv = solve_level(model, p, s, n);
            const double scale = lv.norm * model.a * model.a + 1e-3;
            const Spinor right = dl_correction(lv, model, kUnit, a);
            const Spinor left = dl_correction(lv, model, kUnit, -a);
            REQUIRE(std::abs(right.u + right.v) < 1e-12 * scale);
            REQUIRE(std::abs(left.u - left.v) < 1e-12 * scale);
          }
}

TEST_CASE("correction vanishes outside the bag and matches its struct wrapper") {
  const BagModel model(1.0, 1.0);
  const Level lv = solve_level(model, Parity::odd, Sign::positive, 0);
  const Spinor outside = dl_correction(lv, model, kUnit, 1.25);
  REQUIRE(outside.u == 0.0);
  REQUIRE(outside.v == 0.0);
  const DLCorrection c(lv, model, kUnit);
  for (double x : {-0.4, 0.0, 0.9}) {
    const Spinor s = dl_correction(lv, model, kUnit, x);
    REQUIRE(c.u1(x) == s.u);
    REQUIRE(c.v1(x) == s.v);
  }
}

TEST_CASE("massless shifts vanish identically while the correction does not") {
  const BagModel model(0.0, 1.0);
  for (Parity p : {Parity::even, Parity::odd})
    for (Sign s : {Sign::positive, Sign::negative})
      for (int n : {0, 1, 4}) {
        const Level lv = solve_level(model, p, s, n);
        const auto d = dl_shift_detail(lv, model, kUnit);
        REQUIRE(d.closed_form == 0.0);
        REQUIRE(std::abs(d.quadrature) < 1e-14);
        REQUIRE(d.rel_disagreement < 1e-8);
      }
  // The lower component of the correction stays finite as m -> 0.
  const Level g0 = solve_level(model, Parity::even, Sign::positive, 0);
  REQUIRE(std::abs(dl_correction(g0, model, kUnit, 0.3).v) > 1e-3);
}

TEST_CASE("closed form agrees with direct quadrature of the correction") {
  for (double ma : {0.5, 1.0, 2.0, 3.0}) {
    const BagModel model(ma, 1.0);
    for (Sign s : {Sign::positive, Sign::negative})
      for (const Level& lv : enumerate_levels(model, 6, s)) {
        const auto d = dl_shift_detail(lv, model, kUnit);
        REQUIRE(d.rel_disagreement < 1e-8);
      }
  }
}

TEST_CASE("closed form agrees with the summed free series") {
  const Truncation trunc{};
  for (double ma : {1.0, 3.0}) {
    const BagModel model(ma, 1.0);
    for (Sign s : {Sign::positive, Sign::negative})
      for (const Level& lv : enumerate_levels(model, 4, s)) {
        const double dl = dl_shift(lv, model, kUnit);
        const double series = shift_level_free(model, kUnit, lv, trunc);
        REQUIRE(std::abs(dl - series) < 1e-6 * std::abs(dl));
      }
  }
}

TEST_CASE("frozen values at m a = 3") {
  const BagModel model(3.0, 1.0);
  const Level g0 = solve_level(model, Parity::even, Sign::positive, 0);
  REQUIRE(std::abs(g0.k - golden::ka_ground_ma3) < 1e-12);
  REQUIRE(std::abs(dl_shift(g0, model, kUnit) - golden::dl_ground_ma3) <
          1e-9 * std::abs(golden::dl_ground_ma3));
  const Level en0 = solve_level(model, Parity::even, Sign::negative, 0);
  REQUIRE(std::abs(en0.k - golden::ka_evenneg_ma3) < 1e-12);
  REQUIRE(std::abs(dl_shift(en0, model, kUnit) - golden::dl_evenneg_ma3) <
          1e-9 * std::abs(golden::dl_evenneg_ma3));
}

TEST_CASE("mirror partners carry opposite shifts") {
  for (double ma : {0.7, 3.0}) {
    const BagModel model(ma, 1.0);
    for (Parity p : {Parity::even, Parity::odd})
      for (int n : {0, 2}) {
        const Level lv = solve_level(model, p, Sign::positive, n);
        const Level mp = mirror(lv, model);
        const double w = dl_shift(lv, model, kUnit);
        const double wm = dl_shift(mp, model, kUnit);
        REQUIRE(std::abs(wm + w) < 1e-14 * std::abs(w));
      }
  }
}

TEST_CASE("closed-form totals") {
  const Truncation trunc{};
  SECTION("massless total is exactly zero") {
    const ShiftReport r = dl_total(BagModel(0.0, 1.0), kUnit, trunc);
    REQUIRE(r.method == Method::dalgarno_lewis);
    REQUIRE(r.w_total == 0.0);
    for (const auto& [lab, w] : r.per_level) REQUIRE(w == 0.0);
  }
  SECTION("matches the summed series at m a = 1") {
    const BagModel model(1.0, 1.0);
    const ShiftReport rdl = dl_total(model, kUnit, trunc);
    const ShiftReport rII = method_II_total(model, kUnit, trunc);
    REQUIRE(std::abs(rdl.w_total - rII.w_total) < 1e-5 * std::abs(rII.w_total));
    REQUIRE(rdl.dl_max_disagreement < 1e-8);
    REQUIRE(rdl.per_level.size() == rII.per_level.size());
  }
  SECTION("negative at m a = 3") {
    const ShiftReport r = dl_total(BagModel(3.0, 1.0), kUnit, trunc);
    REQUIRE(r.w_total < 0.0);
  }
}

TEST_CASE("nonrelativistic second-order shift") {
  REQUIRE(std::abs(nonrel_shift(BagModel(1.0, 1.0), kUnit) - golden::nonrel_unit) <
          1e-12 * std::abs(golden::nonrel_unit));
  REQUIRE(nonrel_shift(BagModel(1.0, 1.0), kUnit) < 0.0);
  // Exact lambda^2 m a^4 scaling.
  const Perturbation p7 = Perturbation::from_lambda(0.7);
  const double scaled = nonrel_shift(BagModel(2.0, 1.5), p7);
  REQUIRE(std::abs(scaled - 0.49 * 2.0 * std::pow(1.5, 4.0) * golden::nonrel_unit) <
          1e-12 * std::abs(scaled));
  REQUIRE_THROWS_AS(nonrel_shift(BagModel(0.0, 1.0), kUnit), std::invalid_argument);
}

TEST_CASE("relativistic to nonrelativistic ratio approaches one from above") {
  const auto ratio = [](double ma) {
    const BagModel model(ma, 1.0);
    const Level g0 = solve_level(model, Parity::even, Sign::positive, 0);
    return dl_shift(g0, model, kUnit) / nonrel_shift(model, kUnit);
  };
  const double r3 = ratio(3.0);
  REQUIRE(std::abs(r3 - golden::ratio_ma3) < 1e-9);
  REQUIRE(r3 > 1.5);
  REQUIRE(r3 < 2.5);
  const double r100 = ratio(100.0);
  REQUIRE(std::abs(r100 - golden::ratio_ma100) < 1e-9);
  REQUIRE(r100 > 1.015);
  REQUIRE(r100 < 1.025);
  double prev = ratio(3.0);
  for (double ma : {10.0, 30.0, 100.0}) {
    const double r = ratio(ma);
    REQUIRE(r > 1.0);
    REQUIRE(r < prev);
    prev = r;
  }
}

TEST_CASE("shift is linear in the mass near zero") {
  const auto slope = [](double ma) {
    const BagModel model(ma, 1.0);
    const Level g0 = solve_level(model, Parity::even, Sign::positive, 0);
    return dl_shift(g0, model, kUnit) / ma;
  };
  REQUIRE(std::abs(slope(1e-4) / slope(2e-4) - 1.0) < 1e-3);
}
