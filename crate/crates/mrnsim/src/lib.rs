//! Monte Carlo simulator and analytic toolkit for dense multi-antenna relay
//! networks.
//!
//! A set of `L` source-destination pairs (M antennas each) communicates
//! through `K` relay terminals (N antennas each) over two half-duplex hops.
//! Each relay applies a linear transform built from local channel knowledge:
//! matched filter, zero forcing, or linear MMSE. The crate measures
//! per-stream SIR and ergodic spectral efficiency by Monte Carlo, compares
//! them against closed-form large-`K` laws and the cut-set outer bound, and
//! extracts the power-bandwidth figures of merit (minimum energy per bit,
//! wideband slope, high-SNR slope, Eb/N0 improvement factor).
//!
//! Everything is reproducible: trials draw from counter-based substreams of
//! a master seed and accumulate in trial order, so results are bit-identical
//! across thread counts.
//!
//! The `examples/` directory demonstrates each capability; the `mrnsim`
//! binary wraps the same experiment runners behind a CLI.

pub mod asymptotics;
pub mod beamformer;
pub mod channel;
pub mod config;
pub mod error;
pub mod experiments;
pub mod link;
pub mod output;
pub mod random;
pub mod stats;

pub use config::{BetaPolicy, NetworkConfig, PathLossModel, PowerAllocation, Scheme};
pub use error::{Error, Result};
pub use link::TradeoffPoint;
