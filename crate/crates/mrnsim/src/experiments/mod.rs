//! Named experiments: SIR CDFs, power-bandwidth tradeoff sweeps, bursty
//! signaling, antenna scaling, and the verification battery. Each runner
//! returns in-memory tables and can write CSV and/or SVG files.

pub mod antennas;
pub mod bursty;
pub mod sir_cdf;
pub mod tradeoff;
pub mod verify;

use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::output::{ExperimentResult, LinePlot};

/// Which files an experiment writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
    Both,
}

impl OutputFormat {
    pub fn wants_csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    pub fn wants_svg(self) -> bool {
        matches!(self, OutputFormat::Svg | OutputFormat::Both)
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            "both" => Ok(OutputFormat::Both),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

/// Where and how experiment files are written.
#[derive(Debug, Clone)]
pub struct OutputSink {
    pub dir: PathBuf,
    pub format: OutputFormat,
}

impl OutputSink {
    pub fn new(dir: impl Into<PathBuf>, format: OutputFormat) -> Self {
        Self {
            dir: dir.into(),
            format,
        }
    }

    pub fn table(&self, stem: &str, result: &ExperimentResult) -> Result<Option<PathBuf>> {
        if !self.format.wants_csv() {
            return Ok(None);
        }
        let path = self.dir.join(format!("{stem}.csv"));
        result.write(&path)?;
        Ok(Some(path))
    }

    pub fn plot(&self, stem: &str, plot: &LinePlot) -> Result<Option<PathBuf>> {
        if !self.format.wants_svg() {
            return Ok(None);
        }
        let path = self.dir.join(format!("{stem}.svg"));
        plot.write(&path)?;
        Ok(Some(path))
    }
}

/// A sink that writes nothing, for in-memory runs.
pub fn no_output() -> Option<&'static OutputSink> {
    None
}

pub(crate) fn write_table(
    sink: Option<&OutputSink>,
    stem: &str,
    result: &ExperimentResult,
) -> Result<Vec<PathBuf>> {
    match sink {
        Some(s) => Ok(s.table(stem, result)?.into_iter().collect()),
        None => Ok(Vec::new()),
    }
}

pub(crate) fn write_plot(
    sink: Option<&OutputSink>,
    stem: &str,
    plot: &LinePlot,
) -> Result<Vec<PathBuf>> {
    match sink {
        Some(s) => Ok(s.plot(stem, plot)?.into_iter().collect()),
        None => Ok(Vec::new()),
    }
}
