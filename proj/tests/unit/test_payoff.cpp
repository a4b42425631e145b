#include "doctest.h"
#include "spreadfft/errors.hpp"
#include "spreadfft/payoff.hpp"

#include <random>

using namespace spreadfft;

namespace {

// Reference values frozen from 30-digit mpmath evaluations.
struct GammaCase {
  cplx z;
  cplx gamma;
};

const GammaCase kGammaCases[] = {
    {{3.0, 4.0}, {0.0052255384713692142, -0.17254707929430019}},
    {{-2.5, 0.3}, {-0.61382299743774149, -0.21123261493704178}},
    {{0.2, -5.0}, {-0.00050685159634083218, -0.00032224624453995554}},
    {{10.0, -30.0}, {-8.5429315061699319e-7, 6.5860025841092004e-7}},
};

struct PayoffCase {
  Vec2 u;
  cplx value;
};

const PayoffCase kPayoffCases[] = {
    {{0.7, -1.2}, {0.037906644094836591, -0.048469063037489013}},
    {{5.0, 2.0}, {4.840895534565242e-5, -7.0568528625933131e-6}},
    {{-20.0, 13.0}, {-0.0004166918108431562, -0.00050776924281996032}},
};

}  // namespace

TEST_CASE("log gamma known values") {
  CHECK(std::abs(complex_log_gamma(1.0)) < 1e-14);
  CHECK(std::abs(complex_log_gamma(2.0)) < 1e-14);
  CHECK(complex_log_gamma(0.5).real() == doctest::Approx(0.57236494292470009).epsilon(1e-14));
  CHECK(complex_log_gamma(4.0).real() == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(std::abs(complex_log_gamma({3.0, 4.0}) - cplx(-1.7566267846037841, 4.7426644380346579)) < 1e-13);
  for (const auto& c : kGammaCases) {
    CAPTURE(c.z);
    CHECK(std::abs(std::exp(complex_log_gamma(c.z)) - c.gamma) < 1e-13 * std::abs(c.gamma));
  }
}

TEST_CASE("log gamma recurrence") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-6.0, 12.0);
  std::uniform_real_distribution<double> im(-40.0, 40.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(re(rng), im(rng));
    CAPTURE(z);
    // Gamma(z + 1) = z Gamma(z), compared as ratios so the 2 pi i ambiguity drops out.
    const cplx ratio = std::exp(complex_log_gamma(z + 1.0) - complex_log_gamma(z) - std::log(z));
    CHECK(std::abs(ratio - 1.0) < 1e-12);
  }
}

TEST_CASE("log gamma conjugate symmetry") {
  for (const cplx z : {cplx(0.7, 3.0), cplx(5.0, -20.0), cplx(-3.3, 1.2)}) {
    const cplx a = std::exp(complex_log_gamma(std::conj(z)));
    const cplx b = std::conj(std::exp(complex_log_gamma(z)));
    CHECK(std::abs(a - b) < 1e-13 * std::abs(b));
  }
}

TEST_CASE("log gamma poles") {
  CHECK_THROWS_AS(complex_log_gamma(0.0), PoleError);
  CHECK_THROWS_AS(complex_log_gamma(-3.0), PoleError);
  CHECK_NOTHROW(complex_log_gamma(cplx(-3.0, 1e-3)));
}

TEST_CASE("payoff transform at the origin is one sixth") {
  const cplx h = spread_payoff_hat(DampedArgument{{0.0, 0.0}, {-3.0, 1.0}});
  CHECK(std::abs(h - 1.0 / 6.0) < 1e-14);
}

TEST_CASE("payoff transform reference values") {
  for (const auto& c : kPayoffCases) {
    CAPTURE(c.u[0]);
    CAPTURE(c.u[1]);
    const cplx h = spread_payoff_hat(DampedArgument{c.u, {-3.0, 1.0}});
    CHECK(std::abs(h - c.value) < 1e-12 * std::abs(c.value));
  }
}

TEST_CASE("payoff transform conjugate symmetry") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-60.0, 60.0);
  for (const Vec2 eps : {Vec2{-3.0, 1.0}, Vec2{-2.2, 0.6}, Vec2{-1.7, 0.3}}) {
    for (int i = 0; i < 50; ++i) {
      const Vec2 u{d(rng), d(rng)};
      const cplx a = spread_payoff_hat(DampedArgument{u, eps});
      const cplx b = spread_payoff_hat(DampedArgument{{-u[0], -u[1]}, eps});
      CHECK(std::abs(a - std::conj(b)) <= 1e-12 * std::abs(a) + 1e-300);
    }
  }
}

TEST_CASE("damping region") {
  CHECK(damping_valid({-3.0, 1.0}));
  CHECK_FALSE(damping_valid({0.0, 0.0}));
  CHECK_FALSE(damping_valid({-3.0, -0.1}));
  CHECK_FALSE(damping_valid({-1.5, 0.5}));  // boundary eps1 + eps2 = -1 excluded
  CHECK_THROWS_AS(spread_payoff_hat(DampedArgument{{0.0, 0.0}, {0.0, 0.0}}), DampingViolationError);
}
