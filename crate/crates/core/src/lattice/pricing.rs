use super::{build_factors, terminal_distribution, LatticeFactors};
use crate::analytic::deterministic_price;
use crate::{ExerciseStyle, MarketParams, ModelKind, OptionSpec, Result};

/// European price on the trinomial lattice, `e^{-rT} Σ_j p_j payoff(S_j)`.
///
/// Zero volatility collapses the lattice and returns the deterministic
/// forward value directly.
pub fn european_price_tree(
    model: ModelKind,
    params: &MarketParams,
    option: &OptionSpec,
    n: usize,
    c: f64,
) -> Result<f64> {
    option.validate()?;
    option.require_style("european_price_tree", ExerciseStyle::European)?;
    let factors = build_factors(model, params, n, c)?;
    if factors.is_degenerate() {
        return Ok(deterministic_price(model, params, option));
    }
    let dist = terminal_distribution(&factors, params.underlying)?;
    Ok(params.discount() * dist.expectation(|s| option.payoff(s)))
}

/// American price on the trinomial lattice by backward recursion with
/// exercise allowed at every step.
pub fn american_price_tree(
    model: ModelKind,
    params: &MarketParams,
    option: &OptionSpec,
    n: usize,
    c: f64,
) -> Result<f64> {
    option.validate()?;
    option.require_style("american_price_tree", ExerciseStyle::American)?;
    let factors = build_factors(model, params, n, c)?;
    Ok(rollback(&factors, params, option, true))
}

/// Backward induction on the trinomial lattice, with or without early
/// exercise, regardless of `option.style`.
pub fn rollback_price(
    model: ModelKind,
    params: &MarketParams,
    option: &OptionSpec,
    n: usize,
    c: f64,
    early_exercise: bool,
) -> Result<f64> {
    option.validate()?;
    let factors = build_factors(model, params, n, c)?;
    Ok(rollback(&factors, params, option, early_exercise))
}

fn rollback(
    factors: &LatticeFactors,
    params: &MarketParams,
    option: &OptionSpec,
    early_exercise: bool,
) -> f64 {
    let n = factors.n;
    let s0 = params.underlying;
    let step_discount = (-params.rate * factors.h).exp();
    let (pu, pm, pd) = (
        step_discount * factors.p_up,
        step_discount * factors.p_mid,
        step_discount * factors.p_down,
    );

    let mut values: Vec<f64> = (0..=2 * n)
        .map(|j| option.payoff(factors.node_level(s0, n, j)))
        .collect();
    for i in (0..n).rev() {
        for j in 0..=2 * i {
            let continuation = pu * values[j + 2] + pm * values[j + 1] + pd * values[j];
            values[j] = if early_exercise {
                continuation.max(option.payoff(factors.node_level(s0, i, j)))
            } else {
                continuation
            };
        }
    }
    values[0]
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;
    use crate::analytic::bs_price;
    use crate::{Error, OptionKind};

    fn example() -> MarketParams {
        MarketParams::new(100.0, 0.025, 0.25, 0.5).unwrap()
    }

    #[test]
    fn black_scholes_worked_example() {
        let p = example();
        let call = european_price_tree(
            ModelKind::BlackScholes,
            &p,
            &OptionSpec::european(OptionKind::Call, 120.0),
            252,
            3.0,
        )
        .unwrap();
        let put = european_price_tree(
            ModelKind::BlackScholes,
            &p,
            &OptionSpec::european(OptionKind::Put, 120.0),
            252,
            3.0,
        )
        .unwrap();
        assert!((call - 1.724972167).abs() < 1e-9);
        assert!((put - 20.234308227).abs() < 1e-9);
    }

    #[test]
    fn black_worked_example() {
        let call = european_price_tree(
            ModelKind::Black,
            &example(),
            &OptionSpec::european(OptionKind::Call, 120.0),
            252,
            3.0,
        )
        .unwrap();
        assert!((call - 1.497311844).abs() < 1e-9);
    }

    #[test]
    fn binomial_spread_deep_in_the_money() {
        let p = MarketParams::new(100.0, 0.035, 0.30, 1.0).unwrap();
        let call = european_price_tree(
            ModelKind::BlackScholes,
            &p,
            &OptionSpec::european(OptionKind::Call, 80.0),
            252,
            1.0,
        )
        .unwrap();
        assert!((call - 25.583).abs() < 5e-4);
    }

    #[test]
    fn zero_vol_is_exact_forward_intrinsic() {
        let p = MarketParams::new(100.0, 0.04, 0.0, 1.0).unwrap();
        for (kind, k) in [
            (OptionKind::Call, 90.0),
            (OptionKind::Put, 110.0),
            (OptionKind::Put, 90.0),
        ] {
            let spread = 100.0 - k * p.discount();
            let expected = match kind {
                OptionKind::Call => spread.max(0.0),
                OptionKind::Put => (-spread).max(0.0),
            };
            let got = european_price_tree(
                ModelKind::BlackScholes,
                &p,
                &OptionSpec::european(kind, k),
                50,
                3.0,
            )
            .unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn distribution_and_rollback_agree() {
        let p = MarketParams::new(100.0, 0.035, 0.3, 1.0).unwrap();
        for model in [ModelKind::BlackScholes, ModelKind::Black] {
            for kind in [OptionKind::Call, OptionKind::Put] {
                for (n, c) in [(1, 3.0), (7, 1.0), (100, 2.0), (500, 3.0)] {
                    let option = OptionSpec::european(kind, 105.0);
                    let a = european_price_tree(model, &p, &option, n, c).unwrap();
                    let b = rollback_price(model, &p, &option, n, c, false).unwrap();
                    assert_relative_eq!(a, b, max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn style_is_enforced() {
        let p = example();
        let am = OptionSpec::american(OptionKind::Call, 100.0);
        assert!(matches!(
            european_price_tree(ModelKind::BlackScholes, &p, &am, 10, 3.0),
            Err(Error::UnsupportedStyle { .. })
        ));
        let eu = am.with_style(ExerciseStyle::European);
        assert!(matches!(
            american_price_tree(ModelKind::BlackScholes, &p, &eu, 10, 3.0),
            Err(Error::UnsupportedStyle { .. })
        ));
    }

    #[test]
    fn american_call_without_dividends_is_european() {
        let p = example();
        for k in [90.0, 100.0, 110.0] {
            let am = american_price_tree(
                ModelKind::BlackScholes,
                &p,
                &OptionSpec::american(OptionKind::Call, k),
                126,
                3.0,
            )
            .unwrap();
            let eu = european_price_tree(
                ModelKind::BlackScholes,
                &p,
                &OptionSpec::european(OptionKind::Call, k),
                126,
                3.0,
            )
            .unwrap();
            assert!((am - eu).abs() < 1e-9, "K = {k}: {am} vs {eu}");
        }
    }

    #[test]
    fn american_put_carries_early_exercise_premium() {
        let p = example();
        let am = american_price_tree(
            ModelKind::BlackScholes,
            &p,
            &OptionSpec::american(OptionKind::Put, 110.0),
            126,
            3.0,
        )
        .unwrap();
        let eu = european_price_tree(
            ModelKind::BlackScholes,
            &p,
            &OptionSpec::european(OptionKind::Put, 110.0),
            126,
            3.0,
        )
        .unwrap();
        assert!(am > eu);
        let bs = bs_price(&p, &OptionSpec::european(OptionKind::Put, 110.0)).unwrap();
        assert!(am > bs);
    }

    #[test]
    fn american_put_with_vanishing_strike_is_worthless() {
        let v = american_price_tree(
            ModelKind::BlackScholes,
            &example(),
            &OptionSpec::american(OptionKind::Put, 1e-9),
            50,
            3.0,
        )
        .unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn deep_put_is_exercised_at_the_root() {
        let p = MarketParams::new(100.0, 0.1, 0.1, 1.0).unwrap();
        let v = american_price_tree(
            ModelKind::BlackScholes,
            &p,
            &OptionSpec::american(OptionKind::Put, 200.0),
            50,
            3.0,
        )
        .unwrap();
        assert_eq!(v, 100.0);
    }
}
