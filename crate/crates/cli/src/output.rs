use std::fs;
use std::io::Write;

use cublat_core::SweepReport;
use serde_json::{json, Map, Value};

use crate::commands::{Field, Outcome};
use crate::config::{CliConfig, OutputFormat};
use crate::CliError;

const SIGNIFICANT: usize = 12;

/// Formats `x` with 12 significant digits, `%g`-style: fixed notation for
/// decimal exponents in `-5..12`, scientific otherwise, trailing zeros
/// dropped.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-5..SIGNIFICANT as i32).contains(&exponent) {
        let decimals = (SIGNIFICANT as i32 - 1 - exponent).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exponent}", trim_zeros(mantissa.to_owned()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

fn field_text(field: &Field) -> String {
    match field {
        Field::Num(x) => format_sig(*x),
        Field::Count(n) => n.to_string(),
        Field::Text(s) => s.clone(),
    }
}

fn csv_columns(report: &SweepReport) -> Vec<&str> {
    let mut columns = vec!["sweep_key", "tree_price", "analytic_price", "abs_error"];
    columns.extend(report.extra_columns());
    columns
}

fn row_values(report: &SweepReport) -> Vec<Vec<f64>> {
    let extras = report.extra_columns();
    report
        .rows
        .iter()
        .map(|row| {
            let mut values = vec![
                row.sweep_key,
                row.tree_price,
                row.analytic_price,
                row.abs_error,
            ];
            values.extend(
                extras
                    .iter()
                    .map(|label| row.extra.get(*label).copied().unwrap_or(f64::NAN)),
            );
            values
        })
        .collect()
}

/// Renders a sweep report in the requested format.
pub fn render_report(report: &SweepReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = csv_columns(report).join(",");
            out.push('\n');
            for values in row_values(report) {
                let cells: Vec<String> = values.into_iter().map(format_sig).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(report).expect("report serializes");
            text.push('\n');
            text
        }
        OutputFormat::Text => {
            let meta = &report.metadata;
            let p = &meta.params;
            let mut out = format!(
                "# {:?} sweep, model {}, underlying {}, r {}, sigma {}, T {}\n",
                meta.sweep,
                meta.model,
                format_sig(p.underlying),
                format_sig(p.rate),
                format_sig(p.volatility),
                format_sig(p.maturity),
            );
            if let Some(option) = &meta.option {
                out.push_str(&format!(
                    "# {} {} K = {}\n",
                    option.style,
                    option.kind,
                    format_sig(option.strike)
                ));
            }
            for (label, value) in &meta.fixed {
                out.push_str(&format!("# {label} = {}\n", format_sig(*value)));
            }
            let columns = csv_columns(report);
            let cells: Vec<Vec<String>> = row_values(report)
                .into_iter()
                .map(|values| values.into_iter().map(format_sig).collect())
                .collect();
            let widths: Vec<usize> = columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    cells
                        .iter()
                        .map(|row| row[i].len())
                        .chain([c.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: Vec<&str>| -> String {
                let padded: Vec<String> = items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect();
                padded.join("  ").trim_end().to_owned() + "\n"
            };
            out.push_str(&line(columns.clone()));
            for row in &cells {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
            out
        }
    }
}

fn render_record(fields: &[(&'static str, Field)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            fields
                .iter()
                .map(|(k, v)| format!("{k:<width$}  {}\n", field_text(v)))
                .collect()
        }
        OutputFormat::Csv => {
            let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let row: Vec<String> = fields.iter().map(|(_, v)| field_text(v)).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
        OutputFormat::Json => {
            let map: Map<String, Value> = fields
                .iter()
                .map(|(k, v)| {
                    let value = match v {
                        Field::Num(x) => json!(x),
                        Field::Count(n) => json!(n),
                        Field::Text(s) => json!(s),
                    };
                    (k.to_string(), value)
                })
                .collect();
            let mut text =
                serde_json::to_string_pretty(&Value::Object(map)).expect("record serializes");
            text.push('\n');
            text
        }
    }
}

pub(crate) fn emit(
    config: &CliConfig,
    outcome: &Outcome,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let text = match outcome {
        Outcome::Record(fields) => render_record(fields, config.output),
        Outcome::Report(report) => render_report(report, config.output),
    };
    match &config.output_path {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses CSV emitted by [`render_report`] into its header and numeric rows.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or("empty input")?
        .split(',')
        .map(str::to_owned)
        .collect::<Vec<_>>();
    let rows = lines
        .filter(|line| !line.is_empty())
        .map(|line| {
            line.split(',')
                .map(|cell| cell.parse::<f64>().map_err(|e| format!("{cell:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((header, rows))
}
