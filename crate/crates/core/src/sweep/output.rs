//! CSV and JSON emitters and readers for sweep results.
//!
//! CSV files open with `#` metadata lines, then the header
//! `phi,theta,analytic,ideal,noisy,d_ideal,d_noisy`. Unrequested columns are
//! empty cells in CSV and `null` in JSON. The `generated_at` metadata line is
//! the only content that differs between two runs with the same config.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{SweepMetadata, SweepResult, SweepRow};
use crate::error::{Error, Result};

pub const SWEEP_HEADER: [&str; 7] = ["phi", "theta", "analytic", "ideal", "noisy", "d_ideal", "d_noisy"];
pub const DIFF_HEADER: [&str; 4] = ["phi", "theta", "d_ideal", "d_noisy"];

/// Absolute differences at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffRow {
    pub phi: f64,
    pub theta: f64,
    pub d_ideal: Option<f64>,
    pub d_noisy: Option<f64>,
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn write_metadata<W: Write>(w: &mut W, meta: &SweepMetadata, table: &str) -> Result<()> {
    let noise = match &meta.noise {
        Some(n) => format!(
            "readout_flip={} err_1q={} err_2q={} channel={}",
            n.readout_flip,
            n.err_1q,
            n.err_2q,
            serde_json::to_value(n.channel).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
        ),
        None => "none".into(),
    };
    writeln!(w, "# {} {} {table}", meta.tool, meta.version)?;
    writeln!(w, "# quantity: {} ({})", meta.quantity, meta.description)?;
    writeln!(w, "# graph: {}", meta.graph)?;
    writeln!(w, "# phi: {}", meta.phi)?;
    writeln!(w, "# theta: {}", meta.theta)?;
    writeln!(w, "# shots: {}", meta.shots.map(|s| s.to_string()).unwrap_or_else(|| "none".into()))?;
    writeln!(w, "# seed: {}", meta.seed)?;
    writeln!(w, "# noise: {noise}")?;
    if let Some(t) = meta.generated_at {
        writeln!(w, "# generated_at (nondeterministic): {t}")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    metadata: &'a SweepMetadata,
    rows: &'a [SweepRow],
}

#[derive(Serialize)]
struct DiffDocument<'a> {
    metadata: &'a SweepMetadata,
    differences: &'a [DiffRow],
}

#[derive(Deserialize)]
struct RowsDocument {
    rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        write_metadata(&mut w, &self.metadata, "sweep")?;
        let mut out = csv::Writer::from_writer(w);
        out.write_record(SWEEP_HEADER).map_err(csv_err)?;
        for r in &self.rows {
            out.write_record([
                r.phi.to_string(),
                r.theta.to_string(),
                r.analytic.to_string(),
                cell(r.ideal),
                cell(r.noisy),
                cell(r.d_ideal),
                cell(r.d_noisy),
            ])
            .map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let doc = SweepDocument { metadata: &self.metadata, rows: &self.rows };
        let mut s = serde_json::to_string_pretty(&doc).expect("rows serialize");
        s.push('\n');
        s
    }

    pub fn write_diff_csv<W: Write>(&self, mut w: W) -> Result<()> {
        write_metadata(&mut w, &self.metadata, "absolute differences")?;
        let mut out = csv::Writer::from_writer(w);
        out.write_record(DIFF_HEADER).map_err(csv_err)?;
        for d in self.differences() {
            out.write_record([d.phi.to_string(), d.theta.to_string(), cell(d.d_ideal), cell(d.d_noisy)])
                .map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn diff_json(&self) -> String {
        let diffs = self.differences();
        let doc = DiffDocument { metadata: &self.metadata, differences: &diffs };
        let mut s = serde_json::to_string_pretty(&doc).expect("rows serialize");
        s.push('\n');
        s
    }
}

fn parse_cell(raw: &str, what: &str, line: usize) -> Result<Option<f64>> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(None);
    }
    raw.parse::<f64>()
        .map(Some)
        .map_err(|_| Error::Format(format!("row {line}: bad {what} value '{raw}'")))
}

/// Reads the rows of a sweep file written as CSV or JSON.
pub fn parse_rows(text: &str) -> Result<Vec<SweepRow>> {
    if text.trim_start().starts_with('{') {
        let doc: RowsDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        return Ok(doc.rows);
    }
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::Format(e.to_string()))?.clone();
    if header.iter().collect::<Vec<_>>() != SWEEP_HEADER {
        return Err(Error::Format(format!("unexpected header {:?}", header.iter().collect::<Vec<_>>())));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Format(e.to_string()))?;
        let get = |c: usize| parse_cell(record.get(c).unwrap_or(""), SWEEP_HEADER[c], i + 1);
        let required = |c: usize| {
            get(c)?.ok_or_else(|| Error::Format(format!("row {}: missing {}", i + 1, SWEEP_HEADER[c])))
        };
        rows.push(SweepRow {
            phi: required(0)?,
            theta: required(1)?,
            analytic: required(2)?,
            ideal: get(3)?,
            noisy: get(4)?,
            d_ideal: get(5)?,
            d_noisy: get(6)?,
        });
    }
    Ok(rows)
}

pub fn read_rows(path: &Path) -> Result<Vec<SweepRow>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_rows(&text)
}

/// Value column of a sweep file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Column {
    Analytic,
    Ideal,
    Noisy,
}

impl Column {
    fn pick(self, row: &SweepRow) -> Option<f64> {
        match self {
            Column::Analytic => Some(row.analytic),
            Column::Ideal => row.ideal,
            Column::Noisy => row.noisy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompareRow {
    pub phi: f64,
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub rows: Vec<CompareRow>,
    pub max: f64,
    pub mean: f64,
}

impl Comparison {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# max: {}", self.max)?;
        writeln!(w, "# mean: {}", self.mean)?;
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["phi", "theta", "a", "b", "d"]).map_err(csv_err)?;
        for r in &self.rows {
            out.write_record([r.phi, r.theta, r.a, r.b, r.d].map(|v| v.to_string())).map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Point-by-point `|a - b|` between one column of each table.
pub fn compare(a: &[SweepRow], col_a: Column, b: &[SweepRow], col_b: Column) -> Result<Comparison> {
    if a.len() != b.len() {
        return Err(Error::GridMismatch(format!("{} points vs {}", a.len(), b.len())));
    }
    let rows = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (ra, rb))| {
            if (ra.phi - rb.phi).abs() > 1e-12 || (ra.theta - rb.theta).abs() > 1e-12 {
                return Err(Error::GridMismatch(format!(
                    "point {i}: ({}, {}) vs ({}, {})",
                    ra.phi, ra.theta, rb.phi, rb.theta
                )));
            }
            let missing = |c: Column| Error::Format(format!("point {i}: column {c:?} is empty"));
            let va = col_a.pick(ra).ok_or_else(|| missing(col_a))?;
            let vb = col_b.pick(rb).ok_or_else(|| missing(col_b))?;
            Ok(CompareRow { phi: ra.phi, theta: ra.theta, a: va, b: vb, d: (va - vb).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    let max = rows.iter().map(|r| r.d).fold(0.0, f64::max);
    let mean = if rows.is_empty() { 0.0 } else { rows.iter().map(|r| r.d).sum::<f64>() / rows.len() as f64 };
    Ok(Comparison { rows, max, mean })
}
