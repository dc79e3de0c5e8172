//! Figure and sweep datasets with deterministic CSV and JSON serialization.
//!
//! Numbers are written with 17 significant digits so re-reading a file
//! reproduces bit-identical values. Excluded cells (pole intervals) are
//! emitted as empty fields plus an explicit exclusion record, never as NaN.

use std::io::{self, Write};

use serde::Serialize;

use crate::config::OutputFormat;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    /// Explicitly excluded (see the dataset's exclusion records).
    Empty,
}

impl Cell {
    /// A finite number, or an empty cell for callers that already recorded
    /// the exclusion.
    pub fn finite(value: f64) -> Cell {
        if value.is_finite() {
            Cell::Num(value)
        } else {
            Cell::Empty
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    pub fn new(name: impl Into<String>, unit: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
        }
    }
}

/// A half-open note that a column is undefined over an axis interval.
#[derive(Debug, Clone, Serialize)]
pub struct Exclusion {
    pub column: String,
    pub axis: String,
    pub lo: f64,
    pub hi: f64,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    /// Ordered key-value provenance block.
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    pub exclusions: Vec<Exclusion>,
}

/// 17 significant digits: enough for bit-exact f64 round trips.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

impl Dataset {
    pub fn new(name: impl Into<String>, columns: Vec<Column>) -> Self {
        Self {
            name: name.into(),
            metadata: Vec::new(),
            columns,
            rows: Vec::new(),
            exclusions: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.push((key.into(), value.into()));
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn exclude(&mut self, exclusion: Exclusion) {
        self.exclusions.push(exclusion);
    }

    /// Every cell is finite text/number or explicitly empty.
    pub fn all_rows_finite_or_excluded(&self) -> bool {
        self.rows.iter().flatten().all(|c| match c {
            Cell::Num(v) => v.is_finite(),
            _ => true,
        })
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# dataset: {}", self.name)?;
        for (k, v) in &self.metadata {
            writeln!(w, "# {k}: {v}")?;
        }
        for c in &self.columns {
            writeln!(w, "# column: {} [{}]", c.name, c.unit)?;
        }
        for e in &self.exclusions {
            writeln!(
                w,
                "# excluded: column={} {} in [{}, {}] reason={}",
                e.column,
                e.axis,
                format_f64(e.lo),
                format_f64(e.hi),
                e.reason
            )?;
        }
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        writeln!(w, "{}", header.join(","))?;
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    write!(w, ",")?;
                }
                first = false;
                match cell {
                    Cell::Num(v) => write!(w, "{}", format_f64(*v))?,
                    Cell::Text(t) => write!(w, "{t}")?,
                    Cell::Empty => {}
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        #[derive(Serialize)]
        struct Envelope<'a> {
            dataset: &'a str,
            metadata: Vec<MetaEntry<'a>>,
            columns: &'a [Column],
            exclusions: &'a [Exclusion],
            rows: Vec<Vec<serde_json::Value>>,
        }
        #[derive(Serialize)]
        struct MetaEntry<'a> {
            key: &'a str,
            value: &'a str,
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| match cell {
                        Cell::Num(v) => serde_json::Value::from(*v),
                        Cell::Text(t) => serde_json::Value::from(t.as_str()),
                        Cell::Empty => serde_json::Value::Null,
                    })
                    .collect()
            })
            .collect();
        let envelope = Envelope {
            dataset: &self.name,
            metadata: self
                .metadata
                .iter()
                .map(|(k, v)| MetaEntry { key: k, value: v })
                .collect(),
            columns: &self.columns,
            exclusions: &self.exclusions,
            rows,
        };
        serde_json::to_writer_pretty(&mut w, &envelope)?;
        writeln!(w)?;
        Ok(())
    }

    pub fn to_bytes(&self, format: OutputFormat) -> Vec<u8> {
        let mut out = Vec::new();
        match format {
            OutputFormat::Csv => self.write_csv(&mut out).expect("in-memory write"),
            OutputFormat::Json => self.write_json(&mut out).expect("in-memory write"),
        }
        out
    }
}

/// Shared provenance header fields.
pub fn standard_metadata(dataset: &mut Dataset, config_digest: &str) {
    dataset.meta(
        "generator",
        format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
    );
    dataset.meta("config-digest", config_digest.to_string());
    let stamp = std::env::var("SOURCE_DATE_EPOCH")
        .map(|s| format!("epoch {s}"))
        .unwrap_or_else(|_| "unspecified (set SOURCE_DATE_EPOCH to pin)".to_string());
    dataset.meta("generated-at", stamp);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Dataset {
        let mut d = Dataset::new(
            "sample",
            vec![
                Column::new("x", "1"),
                Column::new("label", "text"),
                Column::new("y", "kB T"),
            ],
        );
        d.meta("note", "test");
        d.push_row(vec![
            Cell::Num(0.1),
            Cell::Text("ok".into()),
            Cell::Num(-1.0 / 3.0),
        ]);
        d.push_row(vec![
            Cell::Num(2e-17),
            Cell::Text("gap".into()),
            Cell::Empty,
        ]);
        d.exclude(Exclusion {
            column: "y".into(),
            axis: "x".into(),
            lo: 1.0,
            hi: 2.0,
            reason: "pole".into(),
        });
        d
    }

    #[test]
    fn csv_round_trips_numbers_bit_exactly() {
        let d = sample();
        let bytes = d.to_bytes(OutputFormat::Csv);
        let text = String::from_utf8(bytes).unwrap();
        let data_lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data_lines[0], "x,label,y");
        let fields: Vec<&str> = data_lines[1].split(',').collect();
        assert_eq!(
            fields[0].parse::<f64>().unwrap().to_bits(),
            0.1_f64.to_bits()
        );
        assert_eq!(
            fields[2].parse::<f64>().unwrap().to_bits(),
            (-1.0_f64 / 3.0).to_bits()
        );
        // Excluded cell is an empty field, not a NaN.
        let fields: Vec<&str> = data_lines[2].split(',').collect();
        assert_eq!(fields[2], "");
        assert!(text.contains("# excluded: column=y x in"));
    }

    #[test]
    fn json_round_trips_numbers_bit_exactly() {
        let d = sample();
        let bytes = d.to_bytes(OutputFormat::Json);
        let value: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        let rows = value["rows"].as_array().unwrap();
        let x = rows[0][0].as_f64().unwrap();
        assert_eq!(x.to_bits(), 0.1_f64.to_bits());
        assert!(rows[1][2].is_null());
        assert_eq!(value["exclusions"][0]["reason"], "pole");
    }

    #[test]
    fn serialization_is_deterministic() {
        let d = sample();
        assert_eq!(d.to_bytes(OutputFormat::Csv), d.to_bytes(OutputFormat::Csv));
        assert_eq!(
            d.to_bytes(OutputFormat::Json),
            d.to_bytes(OutputFormat::Json)
        );
    }

    #[test]
    fn non_finite_values_become_empty_cells() {
        assert_eq!(Cell::finite(f64::NAN), Cell::Empty);
        assert_eq!(Cell::finite(f64::INFINITY), Cell::Empty);
        assert_eq!(Cell::finite(1.5), Cell::Num(1.5));
    }
}
