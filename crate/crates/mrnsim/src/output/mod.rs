//! Result tables and plots: UTF-8 CSV with a `#`-prefixed JSON header
//! carrying the config snapshot, and self-contained SVG line plots.

mod csv;
mod svg;

pub use csv::ExperimentResult;
pub use svg::{LinePlot, Series};
