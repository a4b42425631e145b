#pragma once

#include "spreadfft/model.hpp"
#include "spreadfft/types.hpp"

namespace spreadfft {

/// Coefficients of the Riccati equation dD/ds = zeta - omega D + vol_of_vol^2 D^2 / 2,
/// with gamma = sqrt(omega^2 - 2 vol_of_vol^2 zeta) on the principal branch.
struct RiccatiCoeffs {
  cplx zeta;
  cplx omega;
  cplx gamma;
};

/// Which coefficient formulas to use. `derived` follows the Riccati system
/// obtained from the pricing PDE and is what the pricer uses. `as_printed`
/// reproduces the closed-form coefficients exactly as typeset in the source
/// theorems (an extra vol_of_vol^2 factor in the per-asset zeta, no sigma in
/// the common-volatility omega); it is kept for comparison only.
enum class RiccatiForm { derived, as_printed };

/// Characteristic function of the log-price increment X_T - X_0 together with
/// its exponent pieces: value = exp(log_c + <v0, log_d>) * jump_factor.
/// For the proportional model only log_d[0] is used and log_d[1] = 0.
struct CfValue {
  cplx value;
  cplx log_c;
  CVec2 log_d;
  cplx jump_factor;
};

struct CdValue {
  cplx c;
  cplx d;
};

/// Compound-Poisson characteristic function exp(tau lambda (exp(i u.k - u'Delta u / 2) - 1)).
cplx jump_cf(const CVec2& u, double tau, const JumpParams& jumps);

RiccatiCoeffs riccati_coeffs_proportional(const CVec2& u, const ProportionalVolModel& model,
                                          RiccatiForm form = RiccatiForm::derived);

RiccatiCoeffs riccati_coeffs_independent(cplx u_m, int asset_index, const IndependentVolModel& model,
                                         RiccatiForm form = RiccatiForm::derived);

/// Closed-form C(s), D(s) for one variance factor. `drift_term` is the
/// coefficient of s in C coming from the log-price drift. Evaluated in a form
/// that stays accurate as vol_of_vol -> 0 and as gamma -> 0.
/// Throws DegenerateDenominatorError at a pole of D.
CdValue cd_functions(const RiccatiCoeffs& coeffs, const CirParams& cir, cplx drift_term, double s);

/// Continuous logarithm of q(s) = 1 - a (1 - exp(-gamma s)) along s' in [0, s],
/// starting from log q(0) = 0.
cplx tracked_log_ratio(cplx a, cplx gamma, double s);

/// Characteristic functions of the log-price increment over `tau` years.
/// The factor exp(i u.X_0) is not included. Throw NonFiniteError on overflow.
CfValue cf_proportional(const CVec2& u, double tau, const ProportionalVolModel& model,
                        const MarketState& state, RiccatiForm form = RiccatiForm::derived);
CfValue cf_independent(const CVec2& u, double tau, const IndependentVolModel& model,
                       const MarketState& state, RiccatiForm form = RiccatiForm::derived);
CfValue cf(const CVec2& u, double tau, const Model& model, const MarketState& state,
           RiccatiForm form = RiccatiForm::derived);

}  // namespace spreadfft
