#include "doctest.h"
#include "oracles.hpp"
#include "spreadfft/charfn.hpp"
#include "spreadfft/errors.hpp"

#include <random>

using namespace spreadfft;

namespace {

const cplx I(0.0, 1.0);

// Riccati right-hand sides written out from the pricing PDE, independently of
// the coefficient routines under test.
RiccatiCoeffs pde_coeffs_proportional(const CVec2& u, const ProportionalVolModel& m) {
  const double s1 = m.sigma[0], s2 = m.sigma[1];
  const cplx zeta = -0.5 * (I * (s1 * s1 * u[0] + s2 * s2 * u[1]) + s1 * s1 * u[0] * u[0] + s2 * s2 * u[1] * u[1] +
                            2.0 * m.rho_ss * s1 * s2 * u[0] * u[1]);
  const cplx omega = m.cir.kappa - I * m.cir.vol_of_vol * (m.rho_sv[0] * s1 * u[0] + m.rho_sv[1] * s2 * u[1]);
  return {zeta, omega, 0.0};
}

cplx rk4_d(const RiccatiCoeffs& c, double theta, double s) {
  return oracle::rk4([&](cplx d) { return c.zeta - c.omega * d + 0.5 * theta * theta * d * d; }, 0.0, s, 4000);
}

// Five-point central difference.
template <typename F>
cplx derivative(F&& f, double s, double h) {
  return (-f(s + 2 * h) + 8.0 * f(s + h) - 8.0 * f(s - h) + f(s - 2 * h)) / (12.0 * h);
}

CVec2 damped(double a, double b, Vec2 eps = {-3.0, 1.0}) { return {cplx(a, eps[0]), cplx(b, eps[1])}; }

}  // namespace

TEST_CASE("jump characteristic function") {
  const auto [m, s] = benchmark_proportional();
  SUBCASE("no jumps") {
    JumpParams none = m.jumps;
    none.lambda = 0.0;
    CHECK(jump_cf({cplx(1.3), cplx(-0.4)}, 1.0, none) == cplx(1.0));
  }
  SUBCASE("origin") { CHECK(std::abs(jump_cf({0.0, 0.0}, 2.0, m.jumps) - 1.0) < 1e-15); }
  SUBCASE("Poisson series") {
    const CVec2 u{1.0, -1.0};
    const double tau = 1.0, lam = 3.0;
    JumpParams j = JumpParams::from_std(lam, {0.05, -0.1}, {0.2, 0.1}, 0.3);
    const cplx single = oracle::gaussian_cf(u, j.k_bar, j.jump_cov);
    cplx series = 0.0;
    double pn = std::exp(-lam * tau);
    cplx power = 1.0;
    for (int n = 0; n < 80; ++n) {
      series += pn * power;
      pn *= lam * tau / (n + 1);
      power *= single;
    }
    CHECK(std::abs(jump_cf(u, tau, j) - series) < 1e-14);
  }
}

TEST_CASE("Riccati coefficients at the origin") {
  const auto [pm, ps] = benchmark_proportional();
  const auto c = riccati_coeffs_proportional({0.0, 0.0}, pm);
  CHECK(std::abs(c.zeta) == 0.0);
  CHECK(std::abs(c.omega - pm.cir.kappa) == 0.0);
  CHECK(std::abs(c.gamma - pm.cir.kappa) < 1e-15);

  const auto [im, is] = benchmark_independent();
  for (int a = 0; a < 2; ++a) {
    const auto ci = riccati_coeffs_independent(0.0, a, im);
    CHECK(std::abs(ci.zeta) == 0.0);
    CHECK(std::abs(ci.omega - im.cir[a].kappa) == 0.0);
    CHECK(std::abs(ci.gamma - im.cir[a].kappa) < 1e-15);
  }
}

TEST_CASE("Riccati coefficients satisfy the gamma identity") {
  const auto [pm, ps] = benchmark_proportional();
  const auto [im, is] = benchmark_independent();
  for (const CVec2& u : {CVec2{1.0, 1.0}, damped(7.5, -3.0), damped(-150.0, 90.0)}) {
    const auto c = riccati_coeffs_proportional(u, pm);
    const double th = pm.cir.vol_of_vol;
    CHECK(std::abs(c.gamma * c.gamma - (c.omega * c.omega - 2.0 * th * th * c.zeta)) <=
          1e-14 * std::max(1.0, std::norm(c.omega)));
    CHECK(c.gamma.real() >= 0.0);
    const auto ci = riccati_coeffs_independent(u[0], 0, im);
    CHECK(std::abs(ci.gamma * ci.gamma - (ci.omega * ci.omega - 2.0 * th * th * ci.zeta)) <=
          1e-14 * std::max(1.0, std::norm(ci.omega)));
  }
}

TEST_CASE("Riccati coefficients reference values") {
  // Frozen from exact rational arithmetic of the PDE coefficients.
  const auto [pm, ps] = benchmark_proportional();
  const auto c = riccati_coeffs_proportional({2.0, -1.0}, pm);
  CHECK(std::abs(c.zeta - cplx(-1.625, -0.875)) < 1e-15);
  CHECK(std::abs(c.omega - cplx(1.0, 0.05625)) < 1e-15);

  IndependentVolModel im;
  im.sigma = {1.0, 1.0};
  im.cir[0] = {1.0, 0.04, 0.05, 0.04};
  im.rho_sv = {-0.5, 0.0};
  const auto ci = riccati_coeffs_independent(1.0, 0, im);
  CHECK(std::abs(ci.zeta - cplx(-0.5, -0.5)) < 1e-15);
  CHECK(std::abs(ci.omega - cplx(1.0, 0.025)) < 1e-15);

  SUBCASE("as printed variants") {
    const auto pi = riccati_coeffs_independent(1.0, 0, im, RiccatiForm::as_printed);
    CHECK(std::abs(pi.zeta - cplx(-0.00125, -0.00125)) < 1e-15);
    const auto pp = riccati_coeffs_proportional({2.0, -1.0}, pm, RiccatiForm::as_printed);
    CHECK(std::abs(pp.zeta - c.zeta) < 1e-15);
    CHECK(std::abs(pp.omega - cplx(1.0, 0.0625)) < 1e-15);
  }
}

TEST_CASE("Riccati coefficients match the PDE") {
  const auto [pm, ps] = benchmark_proportional();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-50.0, 50.0);
  for (int i = 0; i < 20; ++i) {
    const CVec2 u = damped(d(rng), d(rng));
    const auto ref = pde_coeffs_proportional(u, pm);
    const auto c = riccati_coeffs_proportional(u, pm);
    CHECK(std::abs(c.zeta - ref.zeta) <= 1e-13 * std::abs(ref.zeta));
    CHECK(std::abs(c.omega - ref.omega) <= 1e-13 * std::abs(ref.omega));
  }
}

TEST_CASE("C and D start at zero") {
  const auto [pm, ps] = benchmark_proportional();
  const auto c = riccati_coeffs_proportional({1.0, 1.0}, pm);
  const auto cd = cd_functions(c, pm.cir, I * 0.3, 0.0);
  CHECK(std::abs(cd.c) == 0.0);
  CHECK(std::abs(cd.d) == 0.0);
}

TEST_CASE("C and D solve the Riccati system") {
  const auto [pm, ps] = benchmark_proportional();
  const auto [im, is] = benchmark_independent();
  const cplx drift = I * 0.07;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-20.0, 20.0);
  std::uniform_real_distribution<double> e(-1.0, 1.0);

  auto check = [&](const RiccatiCoeffs& c, const CirParams& cir) {
    const double th = cir.vol_of_vol;
    for (double s : {0.3, 1.0, 2.5}) {
      const auto at = [&](double t) { return cd_functions(c, cir, drift, t); };
      const cplx dd = derivative([&](double t) { return at(t).d; }, s, 1e-3);
      const cplx dc = derivative([&](double t) { return at(t).c; }, s, 1e-3);
      const CdValue v = at(s);
      CHECK(std::abs(dd - (c.zeta - c.omega * v.d + 0.5 * th * th * v.d * v.d)) < 1e-6);
      CHECK(std::abs(dc - (drift + cir.kappa * cir.v_bar * v.d)) < 1e-6);
      const cplx d_rk = rk4_d(c, th, s);
      CHECK(std::abs(v.d - d_rk) <= 1e-9 * std::max(1.0, std::abs(d_rk)));
    }
  };

  for (int i = 0; i < 10; ++i) {
    const CVec2 u{cplx(d(rng), e(rng)), cplx(d(rng), e(rng))};
    CAPTURE(u[0]);
    CAPTURE(u[1]);
    check(riccati_coeffs_proportional(u, pm), pm.cir);
    check(riccati_coeffs_independent(u[0], 0, im), im.cir[0]);
    check(riccati_coeffs_independent(u[1], 1, im), im.cir[1]);
  }
}

TEST_CASE("C and D stay accurate as the volatility of variance vanishes") {
  auto [pm, ps] = benchmark_proportional();
  pm.cir.vol_of_vol = 1e-9;
  const auto c = riccati_coeffs_proportional({0.8, -0.3}, pm);
  const cplx expected = c.zeta * (1.0 - std::exp(-c.omega * 1.5)) / c.omega;
  CHECK(std::abs(cd_functions(c, pm.cir, 0.0, 1.5).d - expected) < 1e-12);
}

TEST_CASE("tracked logarithm is continuous along the path") {
  // Large imaginary gamma drives q(s) around the origin several times.
  for (const auto& [a, gamma] : {std::pair{cplx(0.4, 0.3), cplx(0.5, 30.0)}, std::pair{cplx(1.7, -0.2), cplx(0.2, -25.0)},
                                 std::pair{cplx(0.05, 0.0), cplx(3.0, 0.5)}}) {
    const double s = 2.0;
    const int steps = 200000;
    cplx log_q = 0.0;
    cplx prev = 1.0;
    for (int k = 1; k <= steps; ++k) {
      const cplx q = 1.0 - a * (1.0 - std::exp(-gamma * (s * k / steps)));
      log_q += std::log(q / prev);
      prev = q;
    }
    CAPTURE(a);
    CAPTURE(gamma);
    CHECK(std::abs(tracked_log_ratio(a, gamma, s) - log_q) < 1e-9);
  }
}

TEST_CASE("characteristic function normalisation and symmetry") {
  const auto [pm, ps] = benchmark_proportional();
  const auto [im, is] = benchmark_independent();
  for (const Model& model : {Model(pm), Model(im)}) {
    CHECK(std::abs(cf({0.0, 0.0}, 1.0, model, ps).value - 1.0) < 1e-15);
    for (const Vec2 u : {Vec2{0.7, -1.3}, Vec2{3.0, 2.0}, Vec2{-12.0, 40.0}}) {
      const cplx a = cf({u[0], u[1]}, 1.0, model, ps).value;
      const cplx b = cf({-u[0], -u[1]}, 1.0, model, ps).value;
      CHECK(std::abs(a - std::conj(b)) < 1e-14);
      CHECK(std::abs(a) <= 1.0 + 1e-14);
    }
  }
}

TEST_CASE("characteristic function gives the forward growth") {
  // E[S_T / S_0] = exp(T (r - lambda k + lambda (exp(k + delta^2 / 2) - 1))): the
  // diffusion part is a martingale and the drift carries no jump compensator.
  const auto [pm, ps] = benchmark_proportional();
  const auto [im, is] = benchmark_independent();
  const double tau = 1.5;
  for (int a = 0; a < 2; ++a) {
    CVec2 u{0.0, 0.0};
    u[a] = cplx(0.0, -1.0);
    const double k = pm.jumps.k_bar[a], d2 = pm.jumps.jump_cov[a][a], lam = pm.jumps.lambda;
    const double expected = std::exp(tau * (ps.r - lam * k + lam * (std::exp(k + 0.5 * d2) - 1.0)));
    CHECK(std::abs(cf(u, tau, pm, ps).value - expected) < 1e-12);
    CHECK(std::abs(cf(u, tau, im, is).value - expected) < 1e-12);
  }
}

TEST_CASE("lognormal limit matches a Gaussian characteristic function") {
  const double tau = 1.3;
  SUBCASE("proportional") {
    auto [m, s] = benchmark_proportional();
    m.jumps.lambda = 0.0;
    m.cir.vol_of_vol = 1e-8;
    m.cir.v0 = m.cir.v_bar;
    const double v = m.cir.v_bar;
    const Vec2 mean{(s.r - 0.5 * m.sigma[0] * m.sigma[0] * v) * tau, (s.r - 0.5 * m.sigma[1] * m.sigma[1] * v) * tau};
    const double c12 = m.rho_ss * m.sigma[0] * m.sigma[1] * v * tau;
    const Mat2 cov{{{m.sigma[0] * m.sigma[0] * v * tau, c12}, {c12, m.sigma[1] * m.sigma[1] * v * tau}}};
    for (const CVec2& u : {CVec2{0.7, -1.3}, CVec2{5.0, 3.0}, damped(2.0, -4.0)}) {
      CHECK(std::abs(cf(u, tau, m, s).value - oracle::gaussian_cf(u, mean, cov)) < 1e-6);
    }
  }
  SUBCASE("independent") {
    auto [m, s] = benchmark_independent();
    m.jumps.lambda = 0.0;
    for (auto& c : m.cir) {
      c.vol_of_vol = 1e-8;
      c.v0 = c.v_bar;
    }
    const Vec2 var{m.sigma[0] * m.sigma[0] * m.cir[0].v_bar * tau, m.sigma[1] * m.sigma[1] * m.cir[1].v_bar * tau};
    const Vec2 mean{s.r * tau - 0.5 * var[0], s.r * tau - 0.5 * var[1]};
    const Mat2 cov{{{var[0], 0.0}, {0.0, var[1]}}};
    for (const CVec2& u : {CVec2{0.7, -1.3}, CVec2{5.0, 3.0}, damped(2.0, -4.0)}) {
      CHECK(std::abs(cf(u, tau, m, s).value - oracle::gaussian_cf(u, mean, cov)) < 1e-6);
    }
  }
}

TEST_CASE("models agree on a single asset") {
  // With u2 = 0 both models reduce to the same one-asset stochastic volatility CF.
  const auto [pm, ps] = benchmark_proportional();
  IndependentVolModel im;
  im.sigma = pm.sigma;
  im.cir = {pm.cir, pm.cir};
  im.rho_sv = pm.rho_sv;
  im.jumps = pm.jumps;
  for (const cplx u1 : {cplx(0.7), cplx(-4.0), cplx(3.0, -3.0)}) {
    const cplx a = cf({u1, 0.0}, 2.0, pm, ps).value;
    const cplx b = cf({u1, 0.0}, 2.0, im, ps).value;
    CHECK(std::abs(a - b) < 1e-13 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("characteristic function is finite far out on the contour") {
  const auto [pm, ps] = benchmark_proportional();
  const auto [im, is] = benchmark_independent();
  for (const CVec2& u : {damped(400.0, -350.0), damped(-800.0, 800.0)}) {
    CHECK(std::isfinite(std::abs(cf(u, 1.0, pm, ps).value)));
    CHECK(std::isfinite(std::abs(cf(u, 1.0, im, is).value)));
  }
}
