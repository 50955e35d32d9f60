//! Exhaustive-enumeration oracle: walks every one of the 3^n words over
//! {u, m, d} with multiplicative factors, independent of the lattice's
//! convolution and displacement formulas.

#![allow(dead_code)]

use cublat_core::{LatticeFactors, MarketParams, OptionSpec};

pub struct Enumerated {
    /// Indexed by terminal node `j = n_u - n_d + n`.
    pub levels: Vec<f64>,
    pub probs: Vec<f64>,
    /// `e^{-rT} Σ_w P(w) payoff(S_w)` summed word by word.
    pub price: f64,
}

pub fn enumerate(
    factors: &LatticeFactors,
    params: &MarketParams,
    option: &OptionSpec,
) -> Enumerated {
    let n = factors.n;
    let moves = [
        (factors.down, factors.p_down, -1i64),
        (factors.mid, factors.p_mid, 0),
        (factors.up, factors.p_up, 1),
    ];
    let mut levels = vec![f64::NAN; 2 * n + 1];
    let mut probs = vec![0.0; 2 * n + 1];
    let mut expected = 0.0;
    for word in 0..3usize.pow(n as u32) {
        let (mut level, mut prob, mut net) = (params.underlying, 1.0, 0i64);
        let mut code = word;
        for _ in 0..n {
            let (factor, p, step) = moves[code % 3];
            code /= 3;
            level *= factor;
            prob *= p;
            net += step;
        }
        let j = (net + n as i64) as usize;
        levels[j] = level;
        probs[j] += prob;
        expected += prob * option.payoff(level);
    }
    Enumerated {
        levels,
        probs,
        price: params.discount() * expected,
    }
}
