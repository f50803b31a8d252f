//! CSV result tables.
//!
//! Layout: one `#`-prefixed JSON header line holding the experiment id and
//! the exact config snapshot, a column-name row, then numeric rows. Floats
//! use shortest round-trip formatting, so parsing a file and re-serializing
//! it reproduces the bytes exactly.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::NetworkConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Header {
    experiment: String,
    config: NetworkConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label_column: Option<String>,
}

/// One experiment table: numeric rows, optional leading label column, and
/// the config that produced it. Re-running with the same seed reproduces
/// the rows bit-identically.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub experiment: String,
    pub config: NetworkConfig,
    pub columns: Vec<String>,
    /// Name and values of a leading non-numeric column, when present.
    pub label_column: Option<String>,
    pub labels: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Wall-clock duration of the run; in-memory only, never serialized.
    pub wall_seconds: f64,
}

impl ExperimentResult {
    pub fn new(experiment: impl Into<String>, config: &NetworkConfig, columns: &[&str]) -> Self {
        Self {
            experiment: experiment.into(),
            config: config.clone(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            label_column: None,
            labels: Vec::new(),
            rows: Vec::new(),
            wall_seconds: 0.0,
        }
    }

    pub fn with_labels(mut self, label_column: impl Into<String>) -> Self {
        self.label_column = Some(label_column.into());
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert!(self.label_column.is_none());
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn push_labeled(&mut self, label: impl Into<String>, row: Vec<f64>) {
        debug_assert!(self.label_column.is_some());
        debug_assert_eq!(row.len(), self.columns.len());
        self.labels.push(label.into());
        self.rows.push(row);
    }

    /// Column index by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let header = Header {
            experiment: self.experiment.clone(),
            config: self.config.clone(),
            label_column: self.label_column.clone(),
        };
        let mut out = format!(
            "# {}\n",
            serde_json::to_string(&header).expect("config serializes")
        );
        if let Some(name) = &self.label_column {
            out.push_str(name);
            if !self.columns.is_empty() {
                out.push(',');
            }
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            let mut fields = Vec::with_capacity(row.len() + 1);
            if self.label_column.is_some() {
                fields.push(self.labels[i].clone());
            }
            fields.extend(row.iter().map(|v| v.to_string()));
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header_line = lines
            .next()
            .ok_or_else(|| Error::Parse("empty result file".into()))?;
        let json = header_line
            .strip_prefix("# ")
            .ok_or_else(|| Error::Parse("missing `# ` header line".into()))?;
        let header: Header =
            serde_json::from_str(json).map_err(|e| Error::Parse(format!("bad header: {e}")))?;
        let column_line = lines
            .next()
            .ok_or_else(|| Error::Parse("missing column row".into()))?;
        let mut columns: Vec<String> = column_line.split(',').map(str::to_string).collect();
        if header.label_column.is_some() {
            let first = columns.remove(0);
            if Some(&first) != header.label_column.as_ref() {
                return Err(Error::Parse("label column name mismatch".into()));
            }
        }
        let mut result = ExperimentResult {
            experiment: header.experiment,
            config: header.config,
            columns,
            label_column: header.label_column,
            labels: Vec::new(),
            rows: Vec::new(),
            wall_seconds: 0.0,
        };
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            if result.label_column.is_some() {
                let label = fields
                    .next()
                    .ok_or_else(|| Error::Parse("missing label field".into()))?;
                result.labels.push(label.to_string());
            }
            let row: std::result::Result<Vec<f64>, _> =
                fields.map(|f| f.parse::<f64>()).collect();
            let row = row.map_err(|e| Error::Parse(format!("bad numeric field: {e}")))?;
            if row.len() != result.columns.len() {
                return Err(Error::Parse(format!(
                    "row has {} fields, expected {}",
                    row.len(),
                    result.columns.len()
                )));
            }
            result.rows.push(row);
        }
        Ok(result)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> ExperimentResult {
        let mut r = ExperimentResult::new(
            "tradeoff/zf",
            &NetworkConfig::default(),
            &["snr_db", "C", "ebn0_db", "stderr"],
        );
        r.push(vec![-20.0, 0.001234, 9.087, 1e-5]);
        r.push(vec![0.0, 1.5, -1.76, 0.002]);
        r
    }

    #[test]
    fn csv_round_trip_bytes() {
        let r = sample();
        let text = r.to_csv();
        let back = ExperimentResult::from_csv(&text).unwrap();
        assert_eq!(back.to_csv(), text);
        assert_eq!(back, r);
    }

    #[test]
    fn labeled_round_trip() {
        let mut r = ExperimentResult::new(
            "figures",
            &NetworkConfig::default(),
            &["s0", "s_inf"],
        )
        .with_labels("scheme");
        r.push_labeled("zf", vec![1.9, 1.0]);
        r.push_labeled("mf", vec![1.9, 0.0]);
        let text = r.to_csv();
        let back = ExperimentResult::from_csv(&text).unwrap();
        assert_eq!(back.to_csv(), text);
        assert_eq!(back.labels, vec!["zf", "mf"]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(ExperimentResult::from_csv("").is_err());
        assert!(ExperimentResult::from_csv("no header\na,b\n").is_err());
        let r = sample();
        let mut text = r.to_csv();
        text.push_str("1.0,2.0\n");
        assert!(ExperimentResult::from_csv(&text).is_err());
    }

    proptest! {
        // Shortest round-trip float formatting keeps re-serialized files
        // byte-identical even for awkward values.
        #[test]
        fn round_trip_arbitrary_rows(values in proptest::collection::vec(
            proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO,
            1..40,
        )) {
            let mut r = ExperimentResult::new("prop", &NetworkConfig::default(), &["v"]);
            for v in &values {
                r.push(vec![*v]);
            }
            let text = r.to_csv();
            let back = ExperimentResult::from_csv(&text).unwrap();
            prop_assert_eq!(back.to_csv(), text);
            prop_assert_eq!(back.rows, r.rows);
        }
    }
}
