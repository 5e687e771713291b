//! CSV and markdown renderings of cell summaries.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CellSummary;
use crate::error::{Error, Result};
use crate::models::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            TableFormat::Csv => "csv",
            TableFormat::Markdown => "md",
        }
    }
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Column layout of the summary CSV.
#[derive(Debug, Serialize, Deserialize)]
struct Row {
    family: Family,
    gamma1: f64,
    gamma2: f64,
    p: f64,
    n: usize,
    mu_true: f64,
    mu_hat: f64,
    abs_bias: f64,
    mse: f64,
    ci_lower: f64,
    ci_upper: f64,
    cov_prob: f64,
    length: f64,
    failures: usize,
    k_star_mean: f64,
}

impl From<&CellSummary> for Row {
    fn from(s: &CellSummary) -> Self {
        Row {
            family: s.family,
            gamma1: s.gamma1,
            gamma2: s.gamma2,
            p: s.p,
            n: s.n,
            mu_true: s.mu_true,
            mu_hat: s.mu_hat_mean,
            abs_bias: s.abs_bias,
            mse: s.mse,
            ci_lower: s.ci_mean_lower,
            ci_upper: s.ci_mean_upper,
            cov_prob: s.cov_prob,
            length: s.ci_length_mean,
            failures: s.failures,
            k_star_mean: s.k_star_mean,
        }
    }
}

impl From<Row> for CellSummary {
    fn from(r: Row) -> Self {
        CellSummary {
            family: r.family,
            gamma1: r.gamma1,
            gamma2: r.gamma2,
            p: r.p,
            n: r.n,
            mu_true: r.mu_true,
            mu_hat_mean: r.mu_hat,
            abs_bias: r.abs_bias,
            mse: r.mse,
            ci_mean_lower: r.ci_lower,
            ci_mean_upper: r.ci_upper,
            cov_prob: r.cov_prob,
            ci_length_mean: r.length,
            failures: r.failures,
            k_star_mean: r.k_star_mean,
        }
    }
}

/// Full-precision CSV (shortest round-trip float formatting).
pub fn write_summaries_csv<W: Write>(summaries: &[CellSummary], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    for s in summaries {
        wtr.serialize(Row::from(s))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_summaries_csv<R: Read>(reader: R) -> Result<Vec<CellSummary>> {
    let mut rdr = csv::Reader::from_reader(reader);
    rdr.deserialize::<Row>()
        .map(|row| Ok(row?.into()))
        .collect()
}

fn fmt3(v: f64) -> String {
    if v.is_nan() {
        "—".to_string()
    } else {
        format!("{v:.3}")
    }
}

/// One block per `(family, gamma1, p)`, rows by `n`, three decimals.
pub fn render_markdown(summaries: &[CellSummary]) -> String {
    let mut out = String::new();
    let mut current: Option<(Family, u64)> = None;
    let mut block: Option<u64> = None;
    for s in summaries {
        let head = (s.family, s.gamma1.to_bits());
        let new_block = current != Some(head) || block != Some(s.p.to_bits());
        if new_block && out.ends_with("|\n") {
            out.push('\n');
        }
        if current != Some(head) {
            let _ = writeln!(
                out,
                "## {} γ₁ = {} → μ = {}\n",
                s.family,
                s.gamma1,
                fmt3(s.mu_true)
            );
            current = Some(head);
            block = None;
        }
        if block != Some(s.p.to_bits()) {
            let _ = writeln!(out, "### p = {:.2}\n", s.p);
            out.push_str("| n | μ̂ | abs bias | mse | conf int | cov prob | length | failures | k* |\n");
            out.push_str("|---|---|---|---|---|---|---|---|---|\n");
            block = Some(s.p.to_bits());
        }
        let cov = if s.cov_prob.is_nan() {
            "—".to_string()
        } else {
            format!("{:.2}", s.cov_prob)
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {}-{} | {} | {} | {} | {:.1} |",
            s.n,
            fmt3(s.mu_hat_mean),
            fmt3(s.abs_bias),
            fmt3(s.mse),
            fmt3(s.ci_mean_lower),
            fmt3(s.ci_mean_upper),
            cov,
            fmt3(s.ci_length_mean),
            s.failures,
            s.k_star_mean
        );
    }
    out
}

/// Writes `summaries` to `path` in the requested format.
pub fn write_tables(summaries: &[CellSummary], format: TableFormat, path: &Path) -> Result<()> {
    if summaries.is_empty() {
        return Err(Error::Config("no summaries to write".into()));
    }
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    match format {
        TableFormat::Csv => write_summaries_csv(summaries, &mut w)?,
        TableFormat::Markdown => w.write_all(render_markdown(summaries).as_bytes())?,
    }
    w.flush()?;
    Ok(())
}
