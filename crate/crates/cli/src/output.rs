//! Versioned output records and their JSON, CSV and text renderings.

use serde::{Deserialize, Serialize};
use symarray::coarray::{diff_coarray, sum_coarray};
use symarray::metrics::ratio_to_f64;
use symarray::{metrics, SensorArray};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Figures of merit as printed; recomputing from `positions` must give the same block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsBlock {
    pub n_sensors: usize,
    pub aperture: i64,
    pub contiguous_dof: i64,
    pub contiguous_offset: i64,
    pub first_hole: i64,
    pub total_dof: usize,
    pub redundancy: String,
    pub redundancy_value: f64,
    pub unit_spacings: u64,
    /// `S(d)` for `d = 1..=aperture`.
    pub weights: Vec<u64>,
    pub varsigma: String,
    pub symmetric: bool,
    pub sum_coarray_contiguous: bool,
    pub diff_coarray_contiguous: bool,
}

impl MetricsBlock {
    pub fn of(array: &SensorArray) -> symarray::Result<Self> {
        let m = metrics(array)?;
        Ok(Self {
            n_sensors: m.n_sensors,
            aperture: m.aperture,
            contiguous_dof: m.contiguous_dof.length,
            contiguous_offset: m.contiguous_dof.offset,
            first_hole: m.first_hole,
            total_dof: m.total_dof,
            redundancy: m.redundancy.to_string(),
            redundancy_value: ratio_to_f64(&m.redundancy),
            unit_spacings: m.unit_spacings(),
            varsigma: m.varsigma.to_decimal_string(),
            weights: m.weights,
            symmetric: m.symmetric,
            sum_coarray_contiguous: sum_coarray(array)?.is_contiguous(),
            diff_coarray_contiguous: diff_coarray(array)?.is_contiguous(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: Vec<String>,
    pub positions: Vec<i64>,
    pub metrics: MetricsBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<serde_json::Value>,
}

impl OutputRecord {
    pub fn new(command: Vec<String>, array: &SensorArray, search: Option<serde_json::Value>) -> symarray::Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            positions: array.positions().to_vec(),
            metrics: MetricsBlock::of(array)?,
            search,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("record serializes") + "\n",
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let m = &self.metrics;
        let mut header = "positions,n_sensors,aperture,contiguous_dof,contiguous_offset,first_hole,total_dof,redundancy,unit_spacings,varsigma,symmetric".to_string();
        let mut row = format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            quoted_positions(&self.positions),
            m.n_sensors,
            m.aperture,
            m.contiguous_dof,
            m.contiguous_offset,
            m.first_hole,
            m.total_dof,
            m.redundancy,
            m.unit_spacings,
            m.varsigma,
            m.symmetric
        );
        if let Some(params) = self.search.as_ref().and_then(|s| s.get("params")) {
            header.push_str(",params");
            row.push_str(&format!(",\"{}\"", params.to_string().replace('"', "\"\"")));
        }
        format!("{header}\n{row}\n")
    }

    fn text(&self) -> String {
        let m = &self.metrics;
        let mut out = String::new();
        if let Some(params) = self.search.as_ref().and_then(|s| s.get("params")) {
            out.push_str(&format!("params:          {params}\n"));
        }
        let array = SensorArray::new(self.positions.clone()).map(|a| a.to_string()).unwrap_or_default();
        out.push_str(&format!("positions:       {array}\n"));
        out.push_str(&format!("sensors N:       {}\n", m.n_sensors));
        out.push_str(&format!("aperture L:      {}\n", m.aperture));
        out.push_str(&format!("contiguous H:    {} (offset {})\n", m.contiguous_dof, m.contiguous_offset));
        out.push_str(&format!("first hole:      {}\n", m.first_hole));
        out.push_str(&format!("total DoFs:      {}\n", m.total_dof));
        out.push_str(&format!("redundancy R:    {} = {:.6}\n", m.redundancy, m.redundancy_value));
        out.push_str(&format!("S(1), S(2), S(3): {:?}\n", &m.weights[..m.weights.len().min(3)]));
        out.push_str(&format!("varsigma:        {}\n", truncate(&m.varsigma, 24)));
        out.push_str(&format!("symmetric:       {}\n", m.symmetric));
        out.push_str(&format!(
            "contiguous sum / difference co-array: {} / {}\n",
            m.sum_coarray_contiguous, m.diff_coarray_contiguous
        ));
        out
    }
}

fn truncate(s: &str, n: usize) -> String {
    if s.len() > n {
        format!("{}…", &s[..n])
    } else {
        s.to_string()
    }
}

/// Positions as one quoted, space-separated CSV field.
pub fn quoted_positions(p: &[i64]) -> String {
    format!("\"{}\"", p.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
}

/// A table as column names and string cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, command: &[String]) -> String {
        match format {
            Format::Json => {
                let value = serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "table": self,
                });
                serde_json::to_string_pretty(&value).expect("table serializes") + "\n"
            }
            Format::Csv => {
                let mut out = self.columns.join(",") + "\n";
                for row in &self.rows {
                    out.push_str(&row.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
                out
            }
            Format::Text => {
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|i| {
                        self.rows.iter().map(|r| r[i].chars().count()).chain([self.columns[i].len()]).max().unwrap_or(0)
                    })
                    .collect();
                let line = |cells: &[String]| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                        + "\n"
                };
                let mut out = line(&self.columns);
                for row in &self.rows {
                    out.push_str(&line(row));
                }
                out
            }
        }
    }
}

fn csv_cell(c: &str) -> String {
    if c.starts_with('"') || !c.contains([',', '"', '\n']) {
        c.to_string()
    } else {
        format!("\"{}\"", c.replace('"', "\"\""))
    }
}

/// Parses `"0 1 3"`, `"0,1,3"` or `"{0,1,3}"`.
pub fn parse_positions(text: &str) -> Result<Vec<i64>, String> {
    text.split(|c: char| c.is_whitespace() || matches!(c, ',' | '{' | '}' | '[' | ']'))
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|e| format!("bad position {t:?}: {e}")))
        .collect()
}
