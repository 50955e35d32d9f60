use cublat_core::analytic::analytic_price;
use cublat_core::cubature::{cubature_single_step_price, cubature_terminal_levels};
use cublat_core::experiments::{american_compare, martingale_table, sweep_c, sweep_n};
use cublat_core::lattice::{american_price_tree, crr_price, european_price_tree};
use cublat_core::{ExerciseStyle, ModelKind, OptionSpec, SweepReport};

use crate::config::{CliConfig, Command};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Field {
    Num(f64),
    Count(usize),
    Text(String),
}

/// What a command produced, before formatting.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    Record(Vec<(&'static str, Field)>),
    Report(SweepReport),
}

pub(crate) fn execute(config: &CliConfig) -> Result<Outcome, CliError> {
    let params = &config.params;
    let model = config.model;
    match config.command {
        Command::Price => price(config, option(config)),
        Command::Cubature => {
            let option = option(config);
            let levels = cubature_terminal_levels(model, params)?;
            let cubature = cubature_single_step_price(model, params, &option)?;
            let analytic = analytic_price(model, params, &option)?;
            let mut fields = header(config, &option);
            fields.extend([
                ("level_down", Field::Num(levels[0])),
                ("level_mid", Field::Num(levels[1])),
                ("level_up", Field::Num(levels[2])),
                ("cubature_price", Field::Num(cubature)),
                ("analytic_price", Field::Num(analytic)),
                ("abs_error", Field::Num((cubature - analytic).abs())),
            ]);
            Ok(Outcome::Record(fields))
        }
        Command::SweepN => Ok(Outcome::Report(sweep_n(
            model,
            params,
            &option(config),
            &config.n_grid,
            config.c,
        )?)),
        Command::SweepC => Ok(Outcome::Report(sweep_c(
            model,
            params,
            &option(config),
            &config.c_grid,
            config.n,
        )?)),
        Command::Martingale => Ok(Outcome::Report(martingale_table(
            params,
            &config.c_grid,
            config.n,
        )?)),
        Command::AmericanCompare => Ok(Outcome::Report(american_compare(
            params,
            &option(config),
            &config.n_grid,
            config.c,
        )?)),
    }
}

fn option(config: &CliConfig) -> OptionSpec {
    config
        .option
        .expect("option is resolved for every pricing command")
}

fn header(config: &CliConfig, option: &OptionSpec) -> Vec<(&'static str, Field)> {
    let p = &config.params;
    vec![
        ("model", Field::Text(config.model.to_string())),
        ("style", Field::Text(option.style.to_string())),
        ("type", Field::Text(option.kind.to_string())),
        ("underlying", Field::Num(p.underlying)),
        ("strike", Field::Num(option.strike)),
        ("rate", Field::Num(p.rate)),
        ("sigma", Field::Num(p.volatility)),
        ("maturity", Field::Num(p.maturity)),
    ]
}

fn price(config: &CliConfig, option: OptionSpec) -> Result<Outcome, CliError> {
    let (model, params, n, c) = (config.model, &config.params, config.n, config.c);
    let mut fields = header(config, &option);
    fields.extend([("n", Field::Count(n)), ("c", Field::Num(c))]);
    match option.style {
        ExerciseStyle::European => {
            let tree = european_price_tree(model, params, &option, n, c)?;
            let analytic = analytic_price(model, params, &option)?;
            fields.extend([
                ("tree_price", Field::Num(tree)),
                ("analytic_price", Field::Num(analytic)),
                ("abs_error", Field::Num((tree - analytic).abs())),
            ]);
        }
        ExerciseStyle::American => {
            let european = option.with_style(ExerciseStyle::European);
            let tree = american_price_tree(model, params, &option, n, c)?;
            let european_tree = european_price_tree(model, params, &european, n, c)?;
            let analytic = analytic_price(model, params, &european)?;
            fields.extend([
                ("tree_price", Field::Num(tree)),
                ("european_tree_price", Field::Num(european_tree)),
                ("analytic_european_price", Field::Num(analytic)),
            ]);
            if model == ModelKind::BlackScholes {
                fields.push(("crr_price", Field::Num(crr_price(params, &option, n)?)));
            }
        }
    }
    Ok(Outcome::Record(fields))
}
