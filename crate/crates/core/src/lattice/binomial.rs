use crate::{Error, ExerciseStyle, MarketParams, OptionSpec, Result};

/// One step of a recombining binomial lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialStep {
    pub up_log: f64,
    pub down_log: f64,
    pub p_up: f64,
    /// Discount factor applied per step.
    pub discount: f64,
}

/// Backward induction on an `n`-step binomial lattice rooted at `s0`.
///
/// Node `(i, j)` has `j` up-moves and sits at `s0 exp(j up + (i - j) down)`.
pub fn binomial_rollback(
    s0: f64,
    step: &BinomialStep,
    n: usize,
    option: &OptionSpec,
    early_exercise: bool,
) -> f64 {
    let level =
        |i: usize, j: usize| s0 * (j as f64 * step.up_log + (i - j) as f64 * step.down_log).exp();
    let pu = step.discount * step.p_up;
    let pd = step.discount * (1.0 - step.p_up);

    let mut values: Vec<f64> = (0..=n).map(|j| option.payoff(level(n, j))).collect();
    for i in (0..n).rev() {
        for j in 0..=i {
            let continuation = pu * values[j + 1] + pd * values[j];
            values[j] = if early_exercise {
                continuation.max(option.payoff(level(i, j)))
            } else {
                continuation
            };
        }
    }
    values[0]
}

/// Cox–Ross–Rubinstein binomial price (`u0 = e^{σ√h}`, `d0 = 1/u0`,
/// `p = (e^{rh} - d0)/(u0 - d0)`), European or American per `option.style`.
pub fn crr_price(params: &MarketParams, option: &OptionSpec, n: usize) -> Result<f64> {
    params.validate()?;
    option.validate()?;
    if n == 0 {
        return Err(Error::invalid("n", "step count must be >= 1"));
    }
    let h = params.maturity / n as f64;
    let up_log = params.volatility * h.sqrt();
    let (up, down) = (up_log.exp(), (-up_log).exp());
    let growth = (params.rate * h).exp();
    if !(up > down && down <= growth && growth <= up) {
        return Err(Error::NoArbitrage { down, growth, up });
    }
    let step = BinomialStep {
        up_log,
        down_log: -up_log,
        p_up: (growth - down) / (up - down),
        discount: 1.0 / growth,
    };
    let early_exercise = option.style == ExerciseStyle::American;
    Ok(binomial_rollback(
        params.underlying,
        &step,
        n,
        option,
        early_exercise,
    ))
}
