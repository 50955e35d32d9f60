use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cublat_core::{ExerciseStyle, MarketParams, ModelKind, OptionKind, OptionSpec};
use serde::Deserialize;

use crate::CliError;

const DEFAULT_STEPS: usize = 252;
const DEFAULT_SPREAD: f64 = 3.0;
const DEFAULT_AMERICAN_STEPS: usize = 126;

#[derive(Debug, Parser)]
#[command(
    name = "cublat",
    version,
    about = "Cubature trinomial lattice option pricer"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Price one option on the lattice and by closed form.
    Price(Flags),
    /// Single-period three-point cubature price.
    Cubature(Flags),
    /// European tree vs closed form over a grid of step counts.
    SweepN(Flags),
    /// European tree vs closed form over a grid of spread parameters.
    SweepC(Flags),
    /// Martingale gap over a grid of spread parameters.
    Martingale(Flags),
    /// American trinomial vs CRR over a grid of step counts.
    AmericanCompare(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ModelArg {
    #[value(alias = "black-scholes")]
    #[serde(alias = "black-scholes", alias = "black_scholes")]
    Bs,
    #[value(alias = "black76")]
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum StyleArg {
    #[value(alias = "european")]
    #[serde(alias = "european")]
    Eu,
    #[value(alias = "american")]
    #[serde(alias = "american")]
    Am,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum KindArg {
    Call,
    Put,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

/// Flags shared by every subcommand. Each may also come from `--config`.
#[derive(Debug, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct Flags {
    /// JSON file whose keys mirror the flag names; flags win.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long, value_enum)]
    style: Option<StyleArg>,
    #[arg(long = "type", value_enum)]
    #[serde(rename = "type")]
    kind: Option<KindArg>,
    /// Spot (Black–Scholes) or forward (Black) price.
    #[arg(long, alias = "f0", allow_negative_numbers = true)]
    #[serde(alias = "f0")]
    s0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    /// Step counts: `10,50,252` or inclusive ranges `1:126` / `10:250:10`.
    #[arg(long)]
    n_list: Option<Grid>,
    /// Spread values: `1,3/2,2,3`.
    #[arg(long, allow_hyphen_values = true)]
    c_list: Option<Grid>,
    #[arg(long, value_enum)]
    output: Option<OutputFormat>,
    #[arg(long)]
    output_path: Option<PathBuf>,
}

/// A grid given either as flag text or as a JSON array.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum Grid {
    Text(String),
    Numbers(Vec<f64>),
}

impl std::str::FromStr for Grid {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Grid::Text(s.to_owned()))
    }
}

impl Flags {
    /// Fills every unset field from `file`.
    fn or(self, file: Flags) -> Flags {
        Flags {
            config: self.config,
            model: self.model.or(file.model),
            style: self.style.or(file.style),
            kind: self.kind.or(file.kind),
            s0: self.s0.or(file.s0),
            k: self.k.or(file.k),
            r: self.r.or(file.r),
            sigma: self.sigma.or(file.sigma),
            t: self.t.or(file.t),
            n: self.n.or(file.n),
            c: self.c.or(file.c),
            n_list: self.n_list.or(file.n_list),
            c_list: self.c_list.or(file.c_list),
            output: self.output.or(file.output),
            output_path: self.output_path.or(file.output_path),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Price,
    Cubature,
    SweepN,
    SweepC,
    Martingale,
    AmericanCompare,
}

/// Fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub model: ModelKind,
    pub params: MarketParams,
    /// `None` only for `martingale`.
    pub option: Option<OptionSpec>,
    pub n: usize,
    pub c: f64,
    pub n_grid: Vec<usize>,
    pub c_grid: Vec<f64>,
    pub output: OutputFormat,
    pub output_path: Option<PathBuf>,
}

pub(crate) enum Parsed {
    Config(CliConfig),
    /// Help or version text.
    Info(String),
}

pub(crate) fn parse<I, T>(argv: I, env_output: Option<&str>) -> Result<Parsed, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Ok(Parsed::Info(e.render().to_string()));
        }
        Err(e) => {
            return Err(CliError::Usage(
                e.render().to_string().trim_end().to_owned(),
            ))
        }
    };
    let (command, flags) = match cli.command {
        Sub::Price(f) => (Command::Price, f),
        Sub::Cubature(f) => (Command::Cubature, f),
        Sub::SweepN(f) => (Command::SweepN, f),
        Sub::SweepC(f) => (Command::SweepC, f),
        Sub::Martingale(f) => (Command::Martingale, f),
        Sub::AmericanCompare(f) => (Command::AmericanCompare, f),
    };
    let flags = match flags.config.clone() {
        Some(path) => {
            let file = read_config(&path)?;
            flags.or(file)
        }
        None => flags,
    };
    resolve(command, flags, env_output).map(Parsed::Config)
}

fn read_config(path: &PathBuf) -> Result<Flags, CliError> {
    let fail = |reason: String| CliError::Config {
        path: path.display().to_string(),
        reason,
    };
    let text = fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| fail(e.to_string()))
}

fn required<T>(value: Option<T>, flag: &'static str) -> Result<T, CliError> {
    value.ok_or(CliError::Missing(flag))
}

fn invalid(flag: &'static str, reason: impl Into<String>) -> CliError {
    CliError::Invalid {
        flag,
        reason: reason.into(),
    }
}

fn check(value: f64, flag: &'static str, ok: bool, bound: &str) -> Result<f64, CliError> {
    if value.is_finite() && ok {
        Ok(value)
    } else {
        Err(invalid(flag, format!("{value} (must be {bound})")))
    }
}

fn resolve(
    command: Command,
    flags: Flags,
    env_output: Option<&str>,
) -> Result<CliConfig, CliError> {
    let output = match (flags.output, env_output) {
        (Some(format), _) => format,
        (None, Some(name)) if !name.is_empty() => <OutputFormat as ValueEnum>::from_str(name, true)
            .map_err(|_| {
                invalid(
                    "output",
                    format!(
                        "{name:?} from {} (expected text, csv or json)",
                        crate::OUTPUT_ENV
                    ),
                )
            })?,
        _ => OutputFormat::Text,
    };

    let model = match flags.model.unwrap_or(ModelArg::Bs) {
        ModelArg::Bs => ModelKind::BlackScholes,
        ModelArg::Black => ModelKind::Black,
    };
    if command == Command::AmericanCompare && model == ModelKind::Black {
        return Err(invalid(
            "model",
            "american-compare runs on the Black–Scholes lattice only",
        ));
    }

    let r = required(flags.r, "r")?;
    let sigma = required(flags.sigma, "sigma")?;
    let t = required(flags.t, "t")?;
    // The martingale gap does not depend on the level of the underlying.
    let s0 = match command {
        Command::Martingale => flags.s0.unwrap_or(100.0),
        _ => required(flags.s0, "s0")?,
    };
    let params = MarketParams {
        underlying: check(s0, "s0", s0 > 0.0, "> 0")?,
        rate: check(r, "r", true, "finite")?,
        volatility: check(sigma, "sigma", sigma >= 0.0, ">= 0")?,
        maturity: check(t, "t", t > 0.0, "> 0")?,
    };

    let option = match command {
        Command::Martingale => None,
        _ => {
            let kind = match required(flags.kind, "type")? {
                KindArg::Call => OptionKind::Call,
                KindArg::Put => OptionKind::Put,
            };
            let style = match (command, flags.style) {
                (Command::AmericanCompare, Some(StyleArg::Eu)) => {
                    return Err(invalid("style", "american-compare prices American options"));
                }
                (Command::AmericanCompare, _) => ExerciseStyle::American,
                (_, Some(StyleArg::Am)) => ExerciseStyle::American,
                _ => ExerciseStyle::European,
            };
            if style == ExerciseStyle::American
                && matches!(
                    command,
                    Command::Cubature | Command::SweepN | Command::SweepC
                )
            {
                return Err(invalid(
                    "style",
                    "this command prices European options only",
                ));
            }
            let k = required(flags.k, "k")?;
            Some(OptionSpec::european(kind, check(k, "k", k > 0.0, "> 0")?).with_style(style))
        }
    };

    let n = flags.n.unwrap_or(DEFAULT_STEPS);
    if n == 0 {
        return Err(invalid("n", "0 (must be >= 1)"));
    }
    let c = flags.c.unwrap_or(DEFAULT_SPREAD);
    check(c, "c", c >= 1.0, ">= 1")?;

    let n_grid = match flags.n_list {
        Some(grid) => parse_steps(&grid)?,
        None if command == Command::AmericanCompare => (1..=DEFAULT_AMERICAN_STEPS).collect(),
        None => (1..=n).collect(),
    };
    let c_grid = match flags.c_list {
        Some(grid) => parse_spreads(&grid)?,
        None => vec![c],
    };

    Ok(CliConfig {
        command,
        model,
        params,
        option,
        n,
        c,
        n_grid,
        c_grid,
        output,
        output_path: flags.output_path,
    })
}

fn parse_steps(grid: &Grid) -> Result<Vec<usize>, CliError> {
    let bad = |item: &str| {
        invalid(
            "n-list",
            format!("{item:?} is not a positive integer or range"),
        )
    };
    let mut steps = Vec::new();
    match grid {
        Grid::Numbers(values) => {
            for &v in values {
                if v.fract() != 0.0 || v < 1.0 || v > usize::MAX as f64 {
                    return Err(bad(&v.to_string()));
                }
                steps.push(v as usize);
            }
        }
        Grid::Text(text) => {
            for item in text.split(',').map(str::trim) {
                let parts: Vec<&str> = item.split(':').collect();
                let parsed: Vec<usize> = parts
                    .iter()
                    .map(|p| p.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad(item))?;
                match parsed[..] {
                    [n] => steps.push(n),
                    [start, end] => steps.extend(start..=end),
                    [start, end, step] if step > 0 => steps.extend((start..=end).step_by(step)),
                    _ => return Err(bad(item)),
                }
            }
        }
    }
    if steps.is_empty() || steps.contains(&0) {
        return Err(invalid("n-list", "needs at least one step count, all >= 1"));
    }
    Ok(steps)
}

fn parse_spreads(grid: &Grid) -> Result<Vec<f64>, CliError> {
    let values = match grid {
        Grid::Numbers(values) => values.clone(),
        Grid::Text(text) => text
            .split(',')
            .map(str::trim)
            .map(|item| {
                parse_ratio(item)
                    .ok_or_else(|| invalid("c-list", format!("{item:?} is not a number")))
            })
            .collect::<Result<_, _>>()?,
    };
    if values.is_empty() {
        return Err(invalid("c-list", "needs at least one value"));
    }
    for &c in &values {
        check(c, "c-list", c >= 1.0, ">= 1")?;
    }
    Ok(values)
}

/// `"1.5"` or `"3/2"`.
fn parse_ratio(item: &str) -> Option<f64> {
    match item.split_once('/') {
        Some((num, den)) => Some(num.trim().parse::<f64>().ok()? / den.trim().parse::<f64>().ok()?),
        None => item.parse().ok(),
    }
}
