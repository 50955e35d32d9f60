//! Parameter sweeps over step count, spread and exercise style.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analytic::{analytic_price, bs_price};
use crate::lattice::{
    american_price_tree, build_factors, crr_price, european_price_tree, martingale_gap,
};
use crate::{Error, ExerciseStyle, MarketParams, ModelKind, OptionSpec, Result};

/// One sweep point.
///
/// `abs_error` is always `|tree_price - analytic_price|`. Martingale
/// tables leave both prices at zero and carry the gap in `extra`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub sweep_key: f64,
    pub tree_price: f64,
    pub analytic_price: f64,
    pub abs_error: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, f64>,
}

impl SweepRow {
    pub fn new(sweep_key: f64, tree_price: f64, analytic_price: f64) -> Self {
        Self {
            sweep_key,
            tree_price,
            analytic_price,
            abs_error: (tree_price - analytic_price).abs(),
            extra: BTreeMap::new(),
        }
    }

    fn with(mut self, label: &str, value: f64) -> Self {
        self.extra.insert(label.to_owned(), value);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// Rows keyed by step count.
    StepCount,
    /// Rows keyed by spread parameter `c`.
    Spread,
    /// Martingale gap per `c`.
    Martingale,
    /// American trinomial vs CRR per step count.
    AmericanCompare,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub sweep: SweepKind,
    pub model: ModelKind,
    pub params: MarketParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub option: Option<OptionSpec>,
    /// Settings held constant across rows (`n` or `c`).
    pub fixed: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub metadata: SweepMeta,
    /// Ascending, unique `sweep_key`.
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// Labels of the `extra` columns, in column order.
    pub fn extra_columns(&self) -> Vec<&str> {
        let mut labels: Vec<&str> = self
            .rows
            .iter()
            .flat_map(|row| row.extra.keys().map(String::as_str))
            .collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }
}

fn sorted_steps(n_values: &[usize]) -> Result<Vec<usize>> {
    if n_values.is_empty() {
        return Err(Error::invalid("n_values", "sweep grid is empty"));
    }
    let mut grid = n_values.to_vec();
    grid.sort_unstable();
    grid.dedup();
    Ok(grid)
}

fn sorted_spreads(c_values: &[f64]) -> Result<Vec<f64>> {
    if c_values.is_empty() {
        return Err(Error::invalid("c_values", "sweep grid is empty"));
    }
    if let Some(bad) = c_values.iter().find(|c| c.is_nan()) {
        return Err(Error::invalid("c_values", format!("not a number: {bad}")));
    }
    let mut grid = c_values.to_vec();
    grid.sort_unstable_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

fn require_european(option: &OptionSpec, operation: &'static str) -> Result<()> {
    option.validate()?;
    if option.style != ExerciseStyle::European {
        return Err(Error::UnsupportedStyle {
            operation,
            style: option.style,
        });
    }
    Ok(())
}

/// European tree price against the closed form for each step count.
pub fn sweep_n(
    model: ModelKind,
    params: &MarketParams,
    option: &OptionSpec,
    n_values: &[usize],
    c: f64,
) -> Result<SweepReport> {
    params.validate()?;
    require_european(option, "sweep_n")?;
    let analytic = analytic_price(model, params, option)?;
    let rows = sorted_steps(n_values)?
        .into_iter()
        .map(|n| {
            let tree = european_price_tree(model, params, option, n, c)
                .map_err(|e| e.at_point(n as f64))?;
            Ok(SweepRow::new(n as f64, tree, analytic))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        metadata: SweepMeta {
            sweep: SweepKind::StepCount,
            model,
            params: *params,
            option: Some(*option),
            fixed: BTreeMap::from([("c".to_owned(), c)]),
        },
        rows,
    })
}

/// European tree price against the closed form for each spread `c`, with
/// `p_u = 1/(2c)` in `extra`.
pub fn sweep_c(
    model: ModelKind,
    params: &MarketParams,
    option: &OptionSpec,
    c_values: &[f64],
    n: usize,
) -> Result<SweepReport> {
    params.validate()?;
    require_european(option, "sweep_c")?;
    let analytic = analytic_price(model, params, option)?;
    let rows = sorted_spreads(c_values)?
        .into_iter()
        .map(|c| {
            let factors = build_factors(model, params, n, c).map_err(|e| e.at_point(c))?;
            let tree =
                european_price_tree(model, params, option, n, c).map_err(|e| e.at_point(c))?;
            Ok(SweepRow::new(c, tree, analytic).with("p_u", factors.p_up))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        metadata: SweepMeta {
            sweep: SweepKind::Spread,
            model,
            params: *params,
            option: Some(*option),
            fixed: BTreeMap::from([("n".to_owned(), n as f64)]),
        },
        rows,
    })
}

/// Martingale gap of the Black–Scholes lattice for each spread `c`.
pub fn martingale_table(params: &MarketParams, c_values: &[f64], n: usize) -> Result<SweepReport> {
    params.validate()?;
    let rows = sorted_spreads(c_values)?
        .into_iter()
        .map(|c| {
            let factors =
                build_factors(ModelKind::BlackScholes, params, n, c).map_err(|e| e.at_point(c))?;
            Ok(SweepRow::new(c, 0.0, 0.0)
                .with("p_u", factors.p_up)
                .with("martingale_gap", martingale_gap(&factors, params.rate)))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        metadata: SweepMeta {
            sweep: SweepKind::Martingale,
            model: ModelKind::BlackScholes,
            params: *params,
            option: None,
            fixed: BTreeMap::from([("n".to_owned(), n as f64)]),
        },
        rows,
    })
}

/// American trinomial and CRR prices per step count.
///
/// `analytic_price` is the Black–Scholes European price of the same
/// contract; for a call on a non-dividend spot it is also the American
/// value. `extra` carries `crr_price`, `crr_abs_error` and
/// `european_tree_price`.
pub fn american_compare(
    params: &MarketParams,
    option: &OptionSpec,
    n_values: &[usize],
    c: f64,
) -> Result<SweepReport> {
    params.validate()?;
    option.validate()?;
    option.require_style("american_compare", ExerciseStyle::American)?;
    let european = option.with_style(ExerciseStyle::European);
    let analytic = bs_price(params, &european)?;
    let model = ModelKind::BlackScholes;
    let rows = sorted_steps(n_values)?
        .into_iter()
        .map(|n| {
            let key = n as f64;
            let tree =
                american_price_tree(model, params, option, n, c).map_err(|e| e.at_point(key))?;
            let crr = crr_price(params, option, n).map_err(|e| e.at_point(key))?;
            let eu_tree =
                european_price_tree(model, params, &european, n, c).map_err(|e| e.at_point(key))?;
            Ok(SweepRow::new(key, tree, analytic)
                .with("crr_price", crr)
                .with("crr_abs_error", (crr - analytic).abs())
                .with("european_tree_price", eu_tree))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        metadata: SweepMeta {
            sweep: SweepKind::AmericanCompare,
            model,
            params: *params,
            option: Some(*option),
            fixed: BTreeMap::from([("c".to_owned(), c)]),
        },
        rows,
    })
}
