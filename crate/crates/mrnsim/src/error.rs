use thiserror::Error;

/// Errors produced by configuration validation, numerics, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A channel draw produced a Gram matrix too ill-conditioned to invert.
    /// Callers redraw and count these.
    #[error("degenerate channel draw: Gram condition number {cond:.3e} exceeds {limit:.0e}")]
    DegenerateDraw { cond: f64, limit: f64 },

    #[error("theta2 is infinite at gamma shape {shape} (requires shape >= 2)")]
    Theta2Infinite { shape: usize },

    #[error("unusable tradeoff curve: {0}")]
    InsufficientCurve(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
