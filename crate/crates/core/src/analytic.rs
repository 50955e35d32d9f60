//! Closed-form European prices under Black–Scholes and Black-76.
//!
//! Both pricers reduce to the same forward-measure formula
//! `e^{-rT} [F N(d1) - K N(d2)]` with `F = S0 e^{rT}` for a spot and
//! `F = F0` for a forward. Zero total variance (`σ√T` is zero or
//! underflows) takes the deterministic branch.

use crate::{ExerciseStyle, MarketParams, ModelKind, OptionKind, OptionSpec, Result};

/// Standard normal CDF, `erfc(-x/√2)/2`.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Black–Scholes price of a European option on a non-dividend spot.
pub fn bs_price(params: &MarketParams, option: &OptionSpec) -> Result<f64> {
    price(ModelKind::BlackScholes, params, option, "bs_price")
}

/// Black-76 price of a European option on a forward or futures price.
pub fn black_price(params: &MarketParams, option: &OptionSpec) -> Result<f64> {
    price(ModelKind::Black, params, option, "black_price")
}

/// Closed-form price under `model`.
pub fn analytic_price(model: ModelKind, params: &MarketParams, option: &OptionSpec) -> Result<f64> {
    match model {
        ModelKind::BlackScholes => bs_price(params, option),
        ModelKind::Black => black_price(params, option),
    }
}

fn price(
    model: ModelKind,
    params: &MarketParams,
    option: &OptionSpec,
    operation: &'static str,
) -> Result<f64> {
    params.validate()?;
    option.validate()?;
    option.require_style(operation, ExerciseStyle::European)?;

    let std_dev = params.volatility * params.maturity.sqrt();
    if std_dev == 0.0 {
        return Ok(deterministic_price(model, params, option));
    }

    let discount = params.discount();
    let forward = match model {
        ModelKind::BlackScholes => params.underlying / discount,
        ModelKind::Black => params.underlying,
    };
    let strike = option.strike;
    let d1 = (forward / strike).ln() / std_dev + 0.5 * std_dev;
    let d2 = d1 - std_dev;
    let value = match option.kind {
        OptionKind::Call => discount * (forward * norm_cdf(d1) - strike * norm_cdf(d2)),
        OptionKind::Put => discount * (strike * norm_cdf(-d2) - forward * norm_cdf(-d1)),
    };
    Ok(value.max(0.0))
}

/// Zero-volatility limit: the discounted intrinsic value of the forward.
///
/// For a spot this is `max(±(S0 - K e^{-rT}), 0)`; for a forward it is
/// `e^{-rT} max(±(F0 - K), 0)`.
pub fn deterministic_price(model: ModelKind, params: &MarketParams, option: &OptionSpec) -> f64 {
    let discount = params.discount();
    match model {
        ModelKind::BlackScholes => {
            let spread = params.underlying - option.strike * discount;
            match option.kind {
                OptionKind::Call => spread.max(0.0),
                OptionKind::Put => (-spread).max(0.0),
            }
        }
        ModelKind::Black => discount * option.payoff(params.underlying),
    }
}
