//! Recombining trinomial lattice built from the cubature endpoints.
//!
//! Each step moves the log-price by `u = μh + σ√(ch)`, `m = μh` or
//! `d = μh - σ√(ch)` with probabilities `1/(2c)`, `1 - 1/c`, `1/(2c)`.
//! With `c = 3` these are the degree-5 cubature weights; `c = 1` leaves a
//! binomial tree with `p = 1/2`. Because `m = (u + d)/2` the tree recombines
//! and has `2i + 1` nodes at step `i`, indexed `j = 0..=2i` from the bottom;
//! node `(i, j)` feeds `(i+1, j)`, `(i+1, j+1)` and `(i+1, j+2)`.

mod binomial;
mod distribution;
mod pricing;

pub use binomial::{binomial_rollback, crr_price, BinomialStep};
pub use distribution::{terminal_distribution, TerminalDistribution};
pub use pricing::{american_price_tree, european_price_tree, rollback_price};

use serde::{Deserialize, Serialize};

use crate::{Error, MarketParams, ModelKind, Result};

/// Per-step parameters of an `n`-step trinomial lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeFactors {
    pub model: ModelKind,
    pub n: usize,
    /// Years per step, `T / n`.
    pub h: f64,
    pub c: f64,
    /// Log-drift per year: `r - σ²/2` (spot) or `-σ²/2` (forward).
    pub drift: f64,
    /// Log-moves.
    pub u: f64,
    pub m: f64,
    pub d: f64,
    /// Multiplicative factors `e^u`, `e^m`, `e^d`.
    pub up: f64,
    pub mid: f64,
    pub down: f64,
    pub p_up: f64,
    pub p_mid: f64,
    pub p_down: f64,
}

/// Lattice factors for `model` with `n` steps and spread parameter `c ≥ 1`.
pub fn build_factors(
    model: ModelKind,
    params: &MarketParams,
    n: usize,
    c: f64,
) -> Result<LatticeFactors> {
    params.validate()?;
    if n == 0 {
        return Err(Error::invalid("n", "step count must be >= 1"));
    }
    if !(c.is_finite() && c >= 1.0) {
        return Err(Error::invalid(
            "c",
            format!("must be finite and >= 1, got {c}"),
        ));
    }

    let h = params.maturity / n as f64;
    let drift = model.log_drift(params);
    let m = drift * h;
    let spread = params.volatility * (c * h).sqrt();
    let (u, d) = (m + spread, m - spread);
    let p_up = 0.5 / c;

    Ok(LatticeFactors {
        model,
        n,
        h,
        c,
        drift,
        u,
        m,
        d,
        up: u.exp(),
        mid: m.exp(),
        down: d.exp(),
        p_up,
        p_mid: 1.0 - 1.0 / c,
        p_down: p_up,
    })
}

impl LatticeFactors {
    /// Mean of the one-step log-move.
    pub fn log_mean(&self) -> f64 {
        self.p_up * self.u + self.p_mid * self.m + self.p_down * self.d
    }

    /// Variance of the one-step log-move, `¼[p_u + p_d - (p_u - p_d)²](u - d)²`.
    pub fn log_variance(&self) -> f64 {
        let skew = self.p_up - self.p_down;
        let width = self.u - self.d;
        0.25 * (self.p_up + self.p_down - skew * skew) * width * width
    }

    /// One-step expected growth `p_u u0 + p_m m0 + p_d d0`.
    pub fn expected_growth(&self) -> f64 {
        self.p_up * self.up + self.p_mid * self.mid + self.p_down * self.down
    }

    /// Price at node `(i, j)` for a lattice rooted at `s0`.
    #[inline]
    pub fn node_level(&self, s0: f64, i: usize, j: usize) -> f64 {
        let half_width = 0.5 * (self.u - self.d);
        let centre = 0.5 * (self.u + self.d);
        s0 * ((j as f64 - i as f64) * half_width + i as f64 * centre).exp()
    }

    pub(crate) fn is_degenerate(&self) -> bool {
        self.u == self.d
    }
}

/// `|p_u u0 + p_m m0 + p_d d0 - e^{rate h}|`: distance of the one-step
/// measure from the risk-neutral condition.
pub fn martingale_gap(factors: &LatticeFactors, rate: f64) -> f64 {
    (factors.expected_growth() - (rate * factors.h).exp()).abs()
}

/// Number of length-`n` words over `{u, m, d}` that end at node `j`, i.e.
/// with `#u - #d = j - n`.
pub fn path_count(n: usize, j: usize) -> Result<u64> {
    if j > 2 * n {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: 2 * n,
        });
    }
    let overflow = || Error::PathCountOverflow(n);
    let mut total: u64 = 0;
    // n_u = n_d + (j - n); sweep n_d.
    for downs in 0..=n {
        let ups = downs as i64 + j as i64 - n as i64;
        if ups < 0 {
            continue;
        }
        let ups = ups as usize;
        if ups + downs > n {
            break;
        }
        let words = binomial_coefficient(n, ups)
            .zip(binomial_coefficient(n - ups, downs))
            .and_then(|(a, b)| a.checked_mul(b))
            .ok_or_else(overflow)?;
        total = total.checked_add(words).ok_or_else(overflow)?;
    }
    Ok(total)
}

fn binomial_coefficient(n: usize, k: usize) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    u64::try_from(acc).ok()
}
