use serde::{Deserialize, Serialize};

use super::LatticeFactors;
use crate::{MarketParams, Result};

/// Law of the lattice price at maturity: `2n + 1` levels with their
/// probabilities, ascending in node index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TerminalDistribution {
    pub node_levels: Vec<f64>,
    pub node_probs: Vec<f64>,
}

impl TerminalDistribution {
    /// `Σ_j p_j f(level_j)`.
    pub fn expectation(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.node_levels
            .iter()
            .zip(&self.node_probs)
            .map(|(&level, &p)| p * f(level))
            .sum()
    }
}

/// Terminal distribution of an `n`-step lattice rooted at `s0`.
///
/// Probabilities come from `n` convolutions of the one-step law
/// `(p_d, p_m, p_u)`, which stays stable where factorial-based trinomial
/// coefficients would overflow.
pub fn terminal_distribution(factors: &LatticeFactors, s0: f64) -> Result<TerminalDistribution> {
    // Reuse market validation for the root level.
    MarketParams::new(s0, 0.0, 0.0, 1.0)?;
    let n = factors.n;
    let mut probs = vec![0.0; 2 * n + 1];
    let mut next = vec![0.0; 2 * n + 1];
    probs[0] = 1.0;
    for i in 0..n {
        next[..2 * i + 3].fill(0.0);
        for (j, &p) in probs[..2 * i + 1].iter().enumerate() {
            next[j] += factors.p_down * p;
            next[j + 1] += factors.p_mid * p;
            next[j + 2] += factors.p_up * p;
        }
        std::mem::swap(&mut probs, &mut next);
    }
    let node_levels = (0..=2 * n).map(|j| factors.node_level(s0, n, j)).collect();
    Ok(TerminalDistribution {
        node_levels,
        node_probs: probs,
    })
}
