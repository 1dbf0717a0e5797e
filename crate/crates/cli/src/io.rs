//! Matrix files: a JSON object layout and a plain CSV alternative.
//!
//! JSON:
//! ```text
//! {"dim": 2, "matrices": [
//!   [[2.0, 1.0], [1.0, 2.0]],
//!   [[1.0, 0.0], [0.0, 3.0]]
//! ], "labels": ["A1", "A2"]}
//! ```
//! CSV: a header line `dim,<n>`, then each matrix as `n` rows of comma-separated
//! values, with a blank line between matrices.
//!
//! Numbers are written in shortest round-trip form, so a file re-parses to the
//! exact same bits.

use std::fmt::Write as _;
use std::str::FromStr;

use geomean::{SpdMatrix, SpdTuple, SymMatrix};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

/// An ordered list of symmetric matrices sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub dim: usize,
    pub matrices: Vec<SymMatrix>,
    pub labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    dim: usize,
    matrices: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

fn input_error(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl MatrixFile {
    pub fn new(matrices: Vec<SymMatrix>, labels: Option<Vec<String>>) -> Result<Self, CliError> {
        let dim = matrices
            .first()
            .map(SymMatrix::dim)
            .ok_or_else(|| input_error("matrix file holds no matrices"))?;
        let file = Self {
            dim,
            matrices,
            labels,
        };
        file.validate()?;
        Ok(file)
    }

    pub fn from_tuple(tuple: &SpdTuple, labels: Option<Vec<String>>) -> Result<Self, CliError> {
        Self::new(
            tuple.items().iter().map(|a| a.as_sym().clone()).collect(),
            labels,
        )
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.dim == 0 {
            return Err(input_error("dim must be positive"));
        }
        if self.matrices.is_empty() {
            return Err(input_error("matrix file holds no matrices"));
        }
        for (i, m) in self.matrices.iter().enumerate() {
            if m.dim() != self.dim {
                return Err(input_error(format!(
                    "matrix {i}: dimension {} does not match dim {}",
                    m.dim(),
                    self.dim
                )));
            }
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.matrices.len() {
                return Err(input_error(format!(
                    "{} labels for {} matrices",
                    labels.len(),
                    self.matrices.len()
                )));
            }
        }
        Ok(())
    }

    fn grid_to_matrix(index: usize, dim: usize, grid: Vec<Vec<f64>>) -> Result<SymMatrix, CliError> {
        if grid.len() != dim || grid.iter().any(|row| row.len() != dim) {
            return Err(input_error(format!("matrix {index}: expected a {dim}x{dim} grid")));
        }
        SymMatrix::from_rows(&grid).map_err(|e| input_error(format!("matrix {index}: {e}")))
    }

    pub fn parse_json(text: &str) -> Result<Self, CliError> {
        let raw: RawFile =
            serde_json::from_str(text).map_err(|e| input_error(format!("invalid JSON: {e}")))?;
        let matrices = raw
            .matrices
            .into_iter()
            .enumerate()
            .map(|(i, grid)| Self::grid_to_matrix(i, raw.dim, grid))
            .collect::<Result<Vec<_>, _>>()?;
        let file = Self {
            dim: raw.dim,
            matrices,
            labels: raw.labels,
        };
        file.validate()?;
        Ok(file)
    }

    pub fn parse_csv(text: &str) -> Result<Self, CliError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut records = reader.records();
        let header = records
            .next()
            .ok_or_else(|| input_error("empty CSV input"))?
            .map_err(|e| input_error(format!("invalid CSV: {e}")))?;
        let dim = match (header.get(0), header.get(1), header.len()) {
            (Some("dim"), Some(n), 2) => n
                .parse::<usize>()
                .map_err(|_| input_error(format!("invalid dim `{n}` in CSV header")))?,
            _ => return Err(input_error("CSV header must be `dim,<n>`")),
        };
        if dim == 0 {
            return Err(input_error("dim must be positive"));
        }
        let mut rows = Vec::new();
        for (line, record) in records.enumerate() {
            let record = record.map_err(|e| input_error(format!("invalid CSV: {e}")))?;
            let row = record
                .iter()
                .map(|field| {
                    field.parse::<f64>().map_err(|_| {
                        input_error(format!(
                            "matrix {}: invalid number `{field}`",
                            line / dim
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if rows.is_empty() || rows.len() % dim != 0 {
            return Err(input_error(format!(
                "{} data rows do not split into {dim}x{dim} matrices",
                rows.len()
            )));
        }
        let matrices = rows
            .chunks(dim)
            .enumerate()
            .map(|(i, chunk)| Self::grid_to_matrix(i, dim, chunk.to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(matrices, None)
    }

    pub fn parse(text: &str, format: Format) -> Result<Self, CliError> {
        match format {
            Format::Json => Self::parse_json(text),
            Format::Csv => Self::parse_csv(text),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = format!("{{\"dim\": {}, \"matrices\": [\n", self.dim);
        for (i, m) in self.matrices.iter().enumerate() {
            out.push_str("  [");
            for (r, row) in m.to_rows().iter().enumerate() {
                if r > 0 {
                    out.push_str(", ");
                }
                out.push('[');
                push_row(&mut out, row, ", ");
                out.push(']');
            }
            out.push(']');
            if i + 1 < self.matrices.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push(']');
        if let Some(labels) = &self.labels {
            let quoted: Vec<String> = labels
                .iter()
                .map(|l| serde_json::to_string(l).expect("strings serialize"))
                .collect();
            let _ = write!(out, ", \"labels\": [{}]", quoted.join(", "));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("dim,{}\n", self.dim);
        for (i, m) in self.matrices.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for row in m.to_rows() {
                push_row(&mut out, &row, ",");
                out.push('\n');
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    /// Certifies every matrix as SPD, in file order.
    pub fn to_tuple(&self) -> Result<SpdTuple, CliError> {
        let items = self
            .matrices
            .iter()
            .enumerate()
            .map(|(i, m)| {
                SpdMatrix::new(m.clone()).map_err(|e| input_error(format!("matrix {i}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SpdTuple::new(items).map_err(|e| input_error(e.to_string()))
    }
}

fn push_row(out: &mut String, row: &[f64], sep: &str) {
    for (j, v) in row.iter().enumerate() {
        if j > 0 {
            out.push_str(sep);
        }
        // `{:?}` prints the shortest string that parses back to the same f64
        let _ = write!(out, "{v:?}");
    }
}
