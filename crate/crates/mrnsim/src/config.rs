//! Network configuration, unit conventions, and power accounting.
//!
//! Unit convention: the noise power `N0*B` is 1 internally. Every energy
//! quantity is stored as a ratio to `N0*B`; dB inputs are `10*log10` power
//! ratios. The network SNR is the total supplied power over noise, with the
//! half-duplex factor 1/2 in the power accounting for relayed schemes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relaying / processing scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Matched filter: maximizes signal energy, ignores multi-stream interference.
    Mf,
    /// Zero forcing: cancels interference exactly, requires `N >= L*M`.
    Zf,
    /// Linear MMSE: interpolates between Mf and Zf with SNR.
    Lmmse,
    /// Direct transmission baseline (no relays, single time slot).
    Direct,
    /// Empirical cut-set outer bound (relays listen only, `P_R = 0`).
    Cutset,
}

impl Scheme {
    pub fn is_relay(self) -> bool {
        matches!(self, Scheme::Mf | Scheme::Zf | Scheme::Lmmse)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Mf => "mf",
            Scheme::Zf => "zf",
            Scheme::Lmmse => "lmmse",
            Scheme::Direct => "direct",
            Scheme::Cutset => "cutset",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mf" => Ok(Scheme::Mf),
            "zf" => Ok(Scheme::Zf),
            "lmmse" | "l-mmse" => Ok(Scheme::Lmmse),
            "direct" => Ok(Scheme::Direct),
            "cutset" => Ok(Scheme::Cutset),
            other => Err(Error::Parse(format!("unknown scheme `{other}`"))),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relay-to-source power ratio `beta = p_r / p_s`: an explicit value, or the
/// scheme-specific optimum for the operating regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaPolicy {
    Auto,
    Fixed(f64),
}

impl Serialize for BetaPolicy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BetaPolicy::Auto => s.serialize_str("auto"),
            BetaPolicy::Fixed(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for BetaPolicy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(BetaPolicy::Fixed(x)),
            Raw::Word(w) if w.eq_ignore_ascii_case("auto") => Ok(BetaPolicy::Auto),
            Raw::Word(w) => Err(serde::de::Error::custom(format!(
                "beta must be a number or \"auto\", got `{w}`"
            ))),
        }
    }
}

/// Path-loss model for the per-link energy factors E (first hop) and
/// F (second hop). Factors are strictly positive and bounded above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum PathLossModel {
    /// Deterministic factors at fixed dB values.
    Constant { e_db: f64, f_db: f64 },
    /// Factors drawn i.i.d. from bounded uniform laws on the linear scale.
    Uniform {
        e_lo: f64,
        e_hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
}

impl Default for PathLossModel {
    fn default() -> Self {
        PathLossModel::Constant {
            e_db: 0.0,
            f_db: 0.0,
        }
    }
}

/// Exact moments of U[lo, hi]; degenerates gracefully to the point mass.
fn uniform_moment(lo: f64, hi: f64, f: impl Fn(f64) -> f64, antiderivative: impl Fn(f64) -> f64) -> f64 {
    if hi == lo {
        f(lo)
    } else {
        (antiderivative(hi) - antiderivative(lo)) / (hi - lo)
    }
}

impl PathLossModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PathLossModel::Constant { e_db, f_db } => {
                if !e_db.is_finite() || !f_db.is_finite() {
                    return Err(Error::InvalidConfig("path-loss dB values must be finite".into()));
                }
            }
            PathLossModel::Uniform { e_lo, e_hi, f_lo, f_hi } => {
                if !(e_lo > 0.0 && f_lo > 0.0 && e_hi >= e_lo && f_hi >= f_lo && e_hi.is_finite() && f_hi.is_finite()) {
                    return Err(Error::InvalidConfig(
                        "uniform path loss requires 0 < lo <= hi < inf".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn e_bounds(&self) -> (f64, f64) {
        match *self {
            PathLossModel::Constant { e_db, .. } => {
                let e = crate::stats::linear_from_db(e_db);
                (e, e)
            }
            PathLossModel::Uniform { e_lo, e_hi, .. } => (e_lo, e_hi),
        }
    }

    pub fn f_bounds(&self) -> (f64, f64) {
        match *self {
            PathLossModel::Constant { f_db, .. } => {
                let f = crate::stats::linear_from_db(f_db);
                (f, f)
            }
            PathLossModel::Uniform { f_lo, f_hi, .. } => (f_lo, f_hi),
        }
    }

    pub fn mean_e(&self) -> f64 {
        let (lo, hi) = self.e_bounds();
        uniform_moment(lo, hi, |x| x, |x| x * x / 2.0)
    }

    pub fn mean_f(&self) -> f64 {
        let (lo, hi) = self.f_bounds();
        uniform_moment(lo, hi, |x| x, |x| x * x / 2.0)
    }

    pub fn mean_sqrt_e(&self) -> f64 {
        let (lo, hi) = self.e_bounds();
        uniform_moment(lo, hi, f64::sqrt, |x| 2.0 / 3.0 * x.powf(1.5))
    }

    pub fn mean_sqrt_f(&self) -> f64 {
        let (lo, hi) = self.f_bounds();
        uniform_moment(lo, hi, f64::sqrt, |x| 2.0 / 3.0 * x.powf(1.5))
    }

    pub fn mean_inv_e(&self) -> f64 {
        let (lo, hi) = self.e_bounds();
        uniform_moment(lo, hi, |x| 1.0 / x, f64::ln)
    }

    /// Draw one (E, F) pair.
    pub fn sample(&self, stream: &mut crate::random::RandomStream) -> (f64, f64) {
        match *self {
            PathLossModel::Constant { e_db, f_db } => (
                crate::stats::linear_from_db(e_db),
                crate::stats::linear_from_db(f_db),
            ),
            PathLossModel::Uniform { e_lo, e_hi, f_lo, f_hi } => {
                (stream.uniform(e_lo, e_hi), stream.uniform(f_lo, f_hi))
            }
        }
    }
}

/// Full description of one network operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkConfig {
    /// Relay terminal count K (0 only for the direct baseline).
    #[serde(rename = "K")]
    pub relays: usize,
    /// Source-destination pair count L.
    #[serde(rename = "L")]
    pub pairs: usize,
    /// Antennas per source/destination terminal M.
    #[serde(rename = "M")]
    pub terminal_antennas: usize,
    /// Antennas per relay terminal N.
    #[serde(rename = "N")]
    pub relay_antennas: usize,
    /// Network SNR in dB: total supplied power over `N0*B`.
    pub snr_db: f64,
    pub beta: BetaPolicy,
    /// Duty cycle in (0, 1]; sources and relays transmit this fraction of
    /// time at power scaled by `1/alpha`.
    pub alpha: f64,
    pub scheme: Scheme,
    #[serde(default)]
    pub path_loss: PathLossModel,
    pub trials: u64,
    pub seed: u64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            relays: 10,
            pairs: 2,
            terminal_antennas: 1,
            relay_antennas: 2,
            snr_db: 10.0,
            beta: BetaPolicy::Auto,
            alpha: 1.0,
            scheme: Scheme::Zf,
            path_loss: PathLossModel::default(),
            trials: 10_000,
            seed: 1,
        }
    }
}

impl NetworkConfig {
    /// Total spatial stream count L*M.
    pub fn streams(&self) -> usize {
        self.pairs * self.terminal_antennas
    }

    pub fn snr(&self) -> f64 {
        crate::stats::linear_from_db(self.snr_db)
    }

    pub fn with_snr_db(&self, snr_db: f64) -> Self {
        Self { snr_db, ..self.clone() }
    }

    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        Self { scheme, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs < 1 {
            return Err(Error::InvalidConfig("L must be >= 1".into()));
        }
        if self.terminal_antennas < 1 || self.relay_antennas < 1 {
            return Err(Error::InvalidConfig("M and N must be >= 1".into()));
        }
        match self.scheme {
            Scheme::Direct => {}
            _ if self.relays == 0 => {
                return Err(Error::InvalidConfig(
                    "K = 0 is only valid for the direct baseline".into(),
                ));
            }
            _ => {}
        }
        if matches!(self.scheme, Scheme::Zf | Scheme::Lmmse) && self.relay_antennas < self.streams()
        {
            return Err(Error::InvalidConfig(format!(
                "{} requires N >= L*M (N = {}, L*M = {})",
                self.scheme,
                self.relay_antennas,
                self.streams()
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidConfig("alpha must lie in (0, 1]".into()));
        }
        if let BetaPolicy::Fixed(b) = self.beta {
            if !(b > 0.0) {
                return Err(Error::InvalidConfig("beta must be > 0".into()));
            }
        }
        if !self.snr_db.is_finite() {
            return Err(Error::InvalidConfig("snr_db must be finite".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        self.path_loss.validate()
    }
}

/// Per-terminal transmit powers in units of `N0*B`.
///
/// For the half-duplex relay schemes these satisfy
/// `L*p_s + K*p_r = 2*SNR`; the direct baseline transmits in a single slot
/// and satisfies `L*p_s = SNR`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerAllocation {
    /// Source power per terminal.
    pub source: f64,
    /// Relay power per terminal.
    pub relay: f64,
}

impl PowerAllocation {
    /// In-burst powers under duty cycle `alpha`; the average constraint is
    /// preserved because transmission occupies an `alpha` fraction of time.
    pub fn in_burst(&self, alpha: f64) -> PowerAllocation {
        PowerAllocation {
            source: self.source / alpha,
            relay: self.relay / alpha,
        }
    }
}

/// Resolve the source/relay power split for a configuration.
///
/// With `beta` fixed, `p_r = beta * p_s` and `L*p_s + K*p_r = 2*SNR`.
/// With `beta` auto the regime optimum is used: `beta = L/K` below 0 dB,
/// `beta = sqrt(L^3 M / (K^2 theta2))` at and above 0 dB. When `theta2` is
/// infinite (gamma shape 1, i.e. `N = L*M` for Zf/Lmmse) or the scheme has
/// no high-SNR optimum, the low-SNR split `L/K` is kept.
pub fn resolve_power_allocation(cfg: &NetworkConfig) -> Result<PowerAllocation> {
    cfg.validate()?;
    let snr = cfg.snr();
    let l = cfg.pairs as f64;
    let k = cfg.relays as f64;
    match cfg.scheme {
        Scheme::Direct => Ok(PowerAllocation {
            source: snr / l,
            relay: 0.0,
        }),
        Scheme::Cutset => Ok(PowerAllocation {
            source: 2.0 * snr / l,
            relay: 0.0,
        }),
        _ => {
            if cfg.relays == 0 {
                return Err(Error::InvalidConfig(
                    "relay scheme with K = 0".into(),
                ));
            }
            let beta = match cfg.beta {
                BetaPolicy::Fixed(b) => {
                    if !(b > 0.0) {
                        return Err(Error::InvalidConfig("beta must be > 0".into()));
                    }
                    b
                }
                BetaPolicy::Auto => auto_beta(cfg),
            };
            let source = 2.0 * snr / (l + k * beta);
            Ok(PowerAllocation {
                source,
                relay: beta * source,
            })
        }
    }
}

fn auto_beta(cfg: &NetworkConfig) -> f64 {
    let l = cfg.pairs as f64;
    let k = cfg.relays as f64;
    let low = l / k;
    if cfg.snr_db < 0.0 {
        return low;
    }
    // High-SNR optimum needs theta2 of the Gamma(N - LM + 1) gains.
    let shape = crate::asymptotics::gamma_shape(cfg.scheme, crate::asymptotics::Regime::High, cfg);
    let Some(shape) = shape else { return low };
    let thetas = crate::asymptotics::theta_constants(shape, &cfg.path_loss);
    match thetas.theta2_finite() {
        Ok(theta2) => {
            let m = cfg.terminal_antennas as f64;
            (l.powi(3) * m / (k * k * theta2)).sqrt()
        }
        Err(_) => low,
    }
}
