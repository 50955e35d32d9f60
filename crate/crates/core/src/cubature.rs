//! Degree-5 cubature formula on one-dimensional Wiener space.
//!
//! The formula has three weighted piecewise-linear trajectories on `[0, 1]`,
//! each linear on the sub-intervals `[0, 1/3]`, `[1/3, 2/3]`, `[2/3, 1]`
//! with slope `3 θ_{k,j}`. The slopes come in two sign families; both end at
//! `(-√3, 0, √3)`, which is all the pricers below use.

use serde::{Deserialize, Serialize};

use crate::{Error, ExerciseStyle, MarketParams, ModelKind, OptionSpec, Result};

/// Which of the two `∓/±` sign families of θ to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignBranch {
    /// Upper signs of the `∓` / `±` pairs.
    Upper,
    /// Lower signs.
    Lower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CubatureFormula5 {
    pub branch: SignBranch,
    /// `λ_k`, k = 1..3.
    pub weights: [f64; 3],
    /// `θ_{k,j}`: row k is the trajectory, column j the sub-interval.
    pub thetas: [[f64; 3]; 3],
    /// `ω_k(1)`, k = 1..3.
    pub endpoints: [f64; 3],
    /// Length of each sub-interval, `t_j - t_{j-1}`.
    pub sub_interval: f64,
}

/// Values of trajectory `k` at `t_0 = 0, t_1, t_2, t_3 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPath {
    pub k: usize,
    pub values: [f64; 4],
}

impl TrajectoryPath {
    pub fn endpoint(&self) -> f64 {
        self.values[3]
    }
}

impl CubatureFormula5 {
    pub fn new(branch: SignBranch) -> Self {
        let sqrt3 = 3f64.sqrt();
        let sqrt6 = 6f64.sqrt();
        // `s` multiplies every ±√6 term; ∓ terms get -s.
        let s = match branch {
            SignBranch::Upper => 1.0,
            SignBranch::Lower => -1.0,
        };
        let outer = [
            (-2.0 * sqrt3 - s * sqrt6) / 6.0,
            s * sqrt6 / 6.0,
            (2.0 * sqrt3 + s * sqrt6) / 6.0,
        ];
        let middle = [
            (-sqrt3 + s * sqrt6) / 3.0,
            -s * sqrt6 / 3.0,
            (sqrt3 - s * sqrt6) / 3.0,
        ];
        let thetas = [
            [outer[0], middle[0], outer[0]],
            [outer[1], middle[1], outer[1]],
            [outer[2], middle[2], outer[2]],
        ];
        let mut formula = Self {
            branch,
            weights: [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
            thetas,
            endpoints: [0.0; 3],
            sub_interval: 1.0 / 3.0,
        };
        for k in 0..3 {
            formula.endpoints[k] = formula.path(k).values[3];
        }
        formula
    }

    // ω_k(t_j) = 3 θ_{k,j} (t_j - t_{j-1}) + ω_k(t_{j-1}), ω_k(0) = 0.
    fn path(&self, row: usize) -> TrajectoryPath {
        let mut values = [0.0; 4];
        for j in 1..4 {
            values[j] = 3.0 * self.thetas[row][j - 1] * self.sub_interval + values[j - 1];
        }
        TrajectoryPath { k: row + 1, values }
    }

    /// `Σ_k λ_k ω_k^p`.
    pub fn moment(&self, power: i32) -> f64 {
        self.weights
            .iter()
            .zip(self.endpoints)
            .map(|(w, x)| w * x.powi(power))
            .sum()
    }
}

impl Default for CubatureFormula5 {
    fn default() -> Self {
        Self::new(SignBranch::Upper)
    }
}

/// Trajectory `k` (1-based) of the degree-5 formula on the given branch.
pub fn trajectory_points(k: usize, branch: SignBranch) -> Result<TrajectoryPath> {
    if !(1..=3).contains(&k) {
        return Err(Error::TrajectoryIndex(k));
    }
    Ok(CubatureFormula5::new(branch).path(k - 1))
}

/// The three maturity levels reached along the cubature trajectories,
/// ascending.
///
/// Spot: `S0 exp{(r - σ²/2)T + σ√T ω_k}`; forward: `F0 exp{-σ²T/2 + σ√T ω_k}`.
pub fn cubature_terminal_levels(model: ModelKind, params: &MarketParams) -> Result<[f64; 3]> {
    params.validate()?;
    let formula = CubatureFormula5::default();
    let drift = model.log_drift(params) * params.maturity;
    let scale = params.volatility * params.maturity.sqrt();
    Ok(formula
        .endpoints
        .map(|omega| params.underlying * (drift + scale * omega).exp()))
}

/// Single-period price `e^{-rT} Σ λ_k payoff(level_k)`.
pub fn cubature_single_step_price(
    model: ModelKind,
    params: &MarketParams,
    option: &OptionSpec,
) -> Result<f64> {
    option.validate()?;
    option.require_style("cubature_single_step_price", ExerciseStyle::European)?;
    let levels = cubature_terminal_levels(model, params)?;
    let weights = CubatureFormula5::default().weights;
    let expected: f64 = weights
        .iter()
        .zip(levels)
        .map(|(w, level)| w * option.payoff(level))
        .sum();
    Ok(params.discount() * expected)
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;
    use crate::analytic::analytic_price;
    use crate::OptionKind;

    const BRANCHES: [SignBranch; 2] = [SignBranch::Upper, SignBranch::Lower];

    #[test]
    fn weights_form_a_probability() {
        let f = CubatureFormula5::default();
        assert_eq!(f.weights, [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]);
        assert!((f.weights.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn outer_columns_coincide() {
        for branch in BRANCHES {
            let f = CubatureFormula5::new(branch);
            for row in f.thetas {
                assert_eq!(row[0], row[2]);
            }
        }
    }

    #[test]
    fn endpoints_and_moments_on_both_branches() {
        let sqrt3 = 3f64.sqrt();
        for branch in BRANCHES {
            let f = CubatureFormula5::new(branch);
            for (got, want) in f.endpoints.iter().zip([-sqrt3, 0.0, sqrt3]) {
                assert!((got - want).abs() < 1e-14, "{branch:?}: {got} vs {want}");
            }
            for (p, want) in [(1, 0.0), (2, 1.0), (3, 0.0), (4, 3.0), (5, 0.0)] {
                assert!((f.moment(p) - want).abs() < 1e-14, "{branch:?} p={p}");
            }
        }
    }

    #[test]
    fn branches_differ_in_the_middle_but_not_at_the_end() {
        let up = trajectory_points(3, SignBranch::Upper).unwrap();
        let down = trajectory_points(3, SignBranch::Lower).unwrap();
        assert!((up.values[1] - down.values[1]).abs() > 0.1);
        assert!((up.endpoint() - down.endpoint()).abs() < 1e-15);
    }

    #[test]
    fn trajectory_examples() {
        for branch in BRANCHES {
            let k1 = trajectory_points(1, branch).unwrap();
            let k2 = trajectory_points(2, branch).unwrap();
            let k3 = trajectory_points(3, branch).unwrap();
            assert_eq!(k2.values[0], 0.0);
            assert!(k2.endpoint().abs() < 1e-15);
            assert!((k3.endpoint() - 3f64.sqrt()).abs() < 1e-15);
            assert!((k1.endpoint() + k3.endpoint()).abs() < 1e-15);
        }
        // Upper branch, k = 3: first leg is θ_{3,1} = (2√3 + √6)/6.
        let k3 = trajectory_points(3, SignBranch::Upper).unwrap();
        assert_relative_eq!(
            k3.values[1],
            (2.0 * 3f64.sqrt() + 6f64.sqrt()) / 6.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn trajectory_index_is_checked() {
        assert_eq!(
            trajectory_points(0, SignBranch::Upper),
            Err(Error::TrajectoryIndex(0))
        );
        assert_eq!(
            trajectory_points(4, SignBranch::Lower),
            Err(Error::TrajectoryIndex(4))
        );
    }

    #[test]
    fn zero_vol_levels_collapse() {
        let p = MarketParams::new(100.0, 0.04, 0.0, 2.0).unwrap();
        for level in cubature_terminal_levels(ModelKind::BlackScholes, &p).unwrap() {
            assert_relative_eq!(level, 100.0 * (0.08f64).exp(), max_relative = 1e-15);
        }
        for level in cubature_terminal_levels(ModelKind::Black, &p).unwrap() {
            assert_eq!(level, 100.0);
        }
    }

    #[test]
    fn middle_level_of_worked_example() {
        let p = MarketParams::new(100.0, 0.025, 0.25, 0.5).unwrap();
        let levels = cubature_terminal_levels(ModelKind::BlackScholes, &p).unwrap();
        assert_relative_eq!(
            levels[1],
            100.0 * (-0.003125f64).exp(),
            max_relative = 1e-15
        );
        assert!(levels[0] < levels[1] && levels[1] < levels[2]);
    }

    #[test]
    fn single_step_worked_example() {
        // Only the up level clears K = 120: e^{-rT}/6 (S0 e^{(r-σ²/2)T + σ√(3T)} - K).
        let (s0, k, r, sigma, t): (f64, f64, f64, f64, f64) = (100.0, 120.0, 0.025, 0.25, 0.5);
        let up = s0 * ((r - 0.5 * sigma * sigma) * t + sigma * (3.0 * t).sqrt()).exp();
        let oracle = (-r * t).exp() * (up - k) / 6.0;
        assert!((oracle - 2.5347).abs() < 1e-4);

        let p = MarketParams::new(s0, r, sigma, t).unwrap();
        let got = cubature_single_step_price(
            ModelKind::BlackScholes,
            &p,
            &OptionSpec::european(OptionKind::Call, k),
        )
        .unwrap();
        assert_relative_eq!(got, oracle, max_relative = 1e-13);
    }

    #[test]
    fn zero_vol_call_is_forward_intrinsic() {
        let p = MarketParams::new(100.0, 0.03, 0.0, 1.0).unwrap();
        let call = OptionSpec::european(OptionKind::Call, 95.0);
        let got = cubature_single_step_price(ModelKind::BlackScholes, &p, &call).unwrap();
        assert_relative_eq!(got, 100.0 - 95.0 * p.discount(), max_relative = 1e-13);
    }

    #[test]
    fn vanishing_strike_call_is_discounted_mean_level() {
        let p = MarketParams::new(100.0, 0.03, 0.4, 1.0).unwrap();
        let levels = cubature_terminal_levels(ModelKind::BlackScholes, &p).unwrap();
        let mean: f64 = [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]
            .iter()
            .zip(levels)
            .map(|(w, l)| w * l)
            .sum();
        let got = cubature_single_step_price(
            ModelKind::BlackScholes,
            &p,
            &OptionSpec::european(OptionKind::Call, 1e-12),
        )
        .unwrap();
        assert_relative_eq!(got, p.discount() * mean, max_relative = 1e-12);
    }

    #[test]
    fn american_is_rejected() {
        let p = MarketParams::new(100.0, 0.03, 0.4, 1.0).unwrap();
        let am = OptionSpec::american(OptionKind::Put, 100.0);
        assert!(matches!(
            cubature_single_step_price(ModelKind::Black, &p, &am),
            Err(Error::UnsupportedStyle { .. })
        ));
    }

    #[test]
    fn short_maturity_tracks_closed_form_better() {
        for model in [ModelKind::BlackScholes, ModelKind::Black] {
            let gap = |t: f64| {
                let p = MarketParams::new(100.0, 0.025, 0.25, t).unwrap();
                let option = OptionSpec::european(OptionKind::Call, 100.0);
                let cub = cubature_single_step_price(model, &p, &option).unwrap();
                (cub - analytic_price(model, &p, &option).unwrap()).abs()
            };
            assert!(gap(1e-3) < gap(0.5), "{model}");
        }
    }

    proptest! {
        #[test]
        fn discrete_put_call_parity(
            s0 in 10.0f64..500.0,
            k in 10.0f64..500.0,
            r in -0.05f64..0.15,
            sigma in 0.0f64..1.0,
            t in 0.01f64..5.0,
            black in any::<bool>(),
        ) {
            let model = if black { ModelKind::Black } else { ModelKind::BlackScholes };
            let p = MarketParams::new(s0, r, sigma, t).unwrap();
            let c = cubature_single_step_price(model, &p, &OptionSpec::european(OptionKind::Call, k)).unwrap();
            let q = cubature_single_step_price(model, &p, &OptionSpec::european(OptionKind::Put, k)).unwrap();
            let levels = cubature_terminal_levels(model, &p).unwrap();
            let mean: f64 = [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0].iter().zip(levels).map(|(w, l)| w * l).sum();
            let rhs = p.discount() * (mean - k);
            prop_assert!((c - q - rhs).abs() <= 1e-12 * mean.max(k));
        }
    }
}
