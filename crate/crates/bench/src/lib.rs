//! Shared inputs for the lattice benchmarks.

use cublat_core::{MarketParams, OptionKind, OptionSpec};

/// Spot 100, r = 2.5%, σ = 25%, half a year.
pub fn half_year_market() -> MarketParams {
    MarketParams {
        underlying: 100.0,
        rate: 0.025,
        volatility: 0.25,
        maturity: 0.5,
    }
}

pub fn european_call(strike: f64) -> OptionSpec {
    OptionSpec::european(OptionKind::Call, strike)
}

pub fn american_put(strike: f64) -> OptionSpec {
    OptionSpec::american(OptionKind::Put, strike)
}
