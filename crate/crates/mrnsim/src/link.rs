//! End-to-end link simulation: per-stream signal/interference/noise
//! coefficients, conditional SIR, ergodic spectral efficiency, the direct
//! baseline, and the empirical cut-set bound.
//!
//! SIR is computed conditionally on each channel realization by exact
//! coefficient algebra (signal and noise statistics are averaged
//! analytically), so Monte Carlo noise enters only through the fading draws.
//! Trials run on independent `(seed, index)` substreams and are accumulated
//! in index order, making every result bit-identical across schedules.

use nalgebra::{DMatrix, RowDVector};
use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beamformer::{build_beamformer_set, first_hop_effective_gains, BeamformerSet};
use crate::channel::{draw_direct, draw_realization, ChannelRealization, DirectChannelRealization};
use crate::config::{resolve_power_allocation, NetworkConfig, PowerAllocation, Scheme};
use crate::error::{Error, Result};
use crate::random::{RandomStream, C64};
use crate::stats;

/// Noise power `N0*B` in internal units.
const NOISE_POWER: f64 = 1.0;

/// Redraw budget per trial before a degenerate-channel error is surfaced.
const MAX_REDRAWS: u32 = 64;

/// End-to-end coefficients seen by one output stream `(l, m)`:
/// `y = signal*s_{l,m} + sum interference_i*s_i + sum_k relay_noise_k*n_k + z`.
#[derive(Debug, Clone)]
pub struct StreamLinkCoefficients {
    pub signal: C64,
    /// Coefficients of the other LM-1 streams, in flat stream order with
    /// the own stream removed.
    pub interference: Vec<C64>,
    /// One row per relay: the coefficient of that relay's noise vector.
    pub relay_noise: Vec<RowDVector<C64>>,
    /// Destination noise contribution `N0*B`.
    pub dest_noise_var: f64,
}

/// Per-stream SIR values for one realization.
#[derive(Debug, Clone)]
pub struct SirSample {
    pub per_stream: Vec<f64>,
}

/// One point of a power-bandwidth tradeoff curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    /// Network SNR (linear).
    pub snr: f64,
    /// Spectral efficiency C in b/s/Hz.
    pub spectral_efficiency: f64,
    /// Standard error of the Monte Carlo estimate of C.
    pub mc_stderr: f64,
}

impl TradeoffPoint {
    /// Energy per bit over noise, `SNR / C`; by construction
    /// `eb_n0() * spectral_efficiency == snr`.
    pub fn eb_n0(&self) -> f64 {
        self.snr / self.spectral_efficiency
    }

    pub fn snr_db(&self) -> f64 {
        stats::db_from_linear(self.snr)
    }

    pub fn eb_n0_db(&self) -> f64 {
        stats::db_from_linear(self.eb_n0())
    }
}

/// All per-stream coefficient sets of a realization, sharing one pass over
/// the relays.
pub fn stream_coefficients(
    real: &ChannelRealization,
    bf: &BeamformerSet,
) -> Vec<StreamLinkCoefficients> {
    let lm = real.streams();
    let mut end_to_end = DMatrix::<C64>::zeros(lm, lm);
    let mut noise_rows: Vec<Vec<RowDVector<C64>>> = vec![Vec::with_capacity(real.relays); lm];
    for k in 0..real.relays {
        let through = real.stack_second_hop(k) * &bf.transforms[k]; // LM x N
        end_to_end += &through * real.stack_first_hop(k);
        for (j, rows) in noise_rows.iter_mut().enumerate() {
            rows.push(through.row(j).into_owned());
        }
    }
    (0..lm)
        .map(|j| {
            let interference = (0..lm)
                .filter(|&i| i != j)
                .map(|i| end_to_end[(j, i)])
                .collect();
            StreamLinkCoefficients {
                signal: end_to_end[(j, j)],
                interference,
                relay_noise: std::mem::take(&mut noise_rows[j]),
                dest_noise_var: NOISE_POWER,
            }
        })
        .collect()
}

/// Coefficients for a single stream `(l, m)`.
pub fn extract_coefficients(
    real: &ChannelRealization,
    bf: &BeamformerSet,
    pair: usize,
    antenna: usize,
) -> StreamLinkCoefficients {
    let j = pair * real.terminal_antennas + antenna;
    stream_coefficients(real, bf).swap_remove(j)
}

/// Conditional SIR of one stream:
/// `|signal|^2 (p_s/M) / (sum |interf|^2 (p_s/M) + sum_k ||noise_k||^2 N0B + N0B)`.
pub fn compute_sir(
    coeffs: &StreamLinkCoefficients,
    alloc: &PowerAllocation,
    terminal_antennas: usize,
) -> f64 {
    let per_stream_power = alloc.source / terminal_antennas as f64;
    let signal = coeffs.signal.norm_sqr() * per_stream_power;
    let interference: f64 = coeffs
        .interference
        .iter()
        .map(|c| c.norm_sqr() * per_stream_power)
        .sum();
    let relay_noise: f64 = coeffs
        .relay_noise
        .iter()
        .map(|row| row.norm_squared() * NOISE_POWER)
        .sum();
    signal / (interference + relay_noise + coeffs.dest_noise_var)
}

/// Outcome of one relay-scheme trial.
struct RelayTrial {
    sirs: Vec<f64>,
    redraws: u32,
    /// min over relays and streams of the effective first-hop gain E*Y,
    /// gathered only when the duty-cycle condition is being checked.
    min_first_hop_gain: f64,
}

fn relay_trial(
    cfg: &NetworkConfig,
    alloc: &PowerAllocation,
    trial: u64,
    track_burst_gain: bool,
) -> Result<RelayTrial> {
    let mut stream = RandomStream::new(cfg.seed, trial);
    let mut redraws = 0u32;
    let (real, bf) = loop {
        let real = draw_realization(cfg, &mut stream);
        match build_beamformer_set(&real, cfg.scheme, alloc) {
            Ok(bf) => break (real, bf),
            Err(Error::DegenerateDraw { .. }) if redraws < MAX_REDRAWS => redraws += 1,
            Err(e) => return Err(e),
        }
    };
    let coeffs = stream_coefficients(&real, &bf);
    let sirs = coeffs
        .iter()
        .map(|c| compute_sir(c, alloc, cfg.terminal_antennas))
        .collect();
    let mut min_gain = f64::INFINITY;
    if track_burst_gain {
        for k in 0..real.relays {
            let gains = first_hop_effective_gains(cfg.scheme, &real.stack_first_hop(k))?;
            for g in gains {
                min_gain = min_gain.min(g);
            }
        }
    }
    Ok(RelayTrial {
        sirs,
        redraws,
        min_first_hop_gain: min_gain,
    })
}

fn run_indexed<T: Send>(
    trials: u64,
    f: impl Fn(u64) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    // An indexed range keeps the collected Vec in trial order regardless of
    // how rayon schedules the work.
    (0..usize::try_from(trials).expect("trial count exceeds usize"))
        .into_par_iter()
        .map(|t| f(t as u64))
        .collect::<Result<Vec<T>>>()
}

/// Full result of a relay-scheme Monte Carlo run.
#[derive(Debug, Clone)]
pub struct RelayRun {
    pub point: TradeoffPoint,
    /// Degenerate-draw redraw count across all trials (expected ~0).
    pub redraws: u64,
    /// Largest duty cycle the burst condition allows, estimated from the
    /// 1st percentile of the per-trial minimum first-hop gain. Only present
    /// for bursty runs.
    pub alpha_limit: Option<f64>,
    /// Set when the configured duty cycle violates the burst condition.
    pub duty_cycle_warning: bool,
}

fn relay_kernel(cfg: &NetworkConfig, alpha: f64) -> Result<RelayRun> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidConfig("alpha must lie in (0, 1]".into()));
    }
    if !cfg.scheme.is_relay() {
        return Err(Error::InvalidConfig(format!(
            "spectral efficiency kernel requires a relay scheme, got {}",
            cfg.scheme
        )));
    }
    cfg.validate()?;
    let average = resolve_power_allocation(cfg)?;
    let in_burst = average.in_burst(alpha);
    let bursty = alpha < 1.0;
    let trials = run_indexed(cfg.trials, |t| relay_trial(cfg, &in_burst, t, bursty))?;

    let half_streams = 0.5 * alpha;
    let per_trial: Vec<f64> = trials
        .iter()
        .map(|t| {
            half_streams
                * t.sirs
                    .iter()
                    .map(|&s| (1.0 + s).log2())
                    .sum::<f64>()
        })
        .collect();
    let (mean, stderr) = stats::mean_stderr(&per_trial);
    let redraws = trials.iter().map(|t| u64::from(t.redraws)).sum();

    let (alpha_limit, duty_cycle_warning) = if bursty {
        let mut mins: Vec<f64> = trials.iter().map(|t| t.min_first_hop_gain).collect();
        stats::sort_ascending(&mut mins);
        let q01 = stats::quantile_sorted(&mins, 0.01);
        // Burst condition: alpha << min_{k,l,m} E*Y*p_s/(M*N0B).
        let limit = q01 * average.source / cfg.terminal_antennas as f64;
        (Some(limit), alpha >= limit)
    } else {
        (None, false)
    };

    Ok(RelayRun {
        point: TradeoffPoint {
            snr: cfg.snr(),
            spectral_efficiency: mean,
            mc_stderr: stderr,
        },
        redraws,
        alpha_limit,
        duty_cycle_warning,
    })
}

/// Ergodic spectral efficiency of a relay scheme (continuous signaling):
/// Monte Carlo mean of `(1/2) sum_{l,m} log2(1 + SIR_{l,m})`.
pub fn spectral_efficiency(cfg: &NetworkConfig) -> Result<TradeoffPoint> {
    Ok(relay_kernel(cfg, 1.0)?.point)
}

/// Bursty variant: in-burst powers are scaled by `1/alpha` and the mean
/// rate by `alpha`. Reduces to `spectral_efficiency` bit-for-bit at
/// `alpha = 1`. The returned run carries a warning when the configured
/// duty cycle violates the burst high-SNR condition.
pub fn bursty_spectral_efficiency(cfg: &NetworkConfig) -> Result<RelayRun> {
    relay_kernel(cfg, cfg.alpha)
}

/// Pooled per-stream SIR samples over all trials (for CDF experiments),
/// computed with the configured duty cycle's in-burst powers.
pub struct SirRun {
    pub samples: Vec<SirSample>,
    pub redraws: u64,
}

pub fn sir_samples(cfg: &NetworkConfig) -> Result<SirRun> {
    cfg.validate()?;
    let alloc = resolve_power_allocation(cfg)?.in_burst(cfg.alpha);
    let trials = run_indexed(cfg.trials, |t| relay_trial(cfg, &alloc, t, false))?;
    let redraws = trials.iter().map(|t| u64::from(t.redraws)).sum();
    Ok(SirRun {
        samples: trials
            .into_iter()
            .map(|t| SirSample { per_stream: t.sirs })
            .collect(),
        redraws,
    })
}

/// Validation helper: draw random symbols and noises, push them through the
/// network directly (`r_k = H s + n`, `t_k = A_k r_k`, `y = G t + z`), and
/// rebuild each output from the extracted coefficients. Returns the worst
/// relative mismatch across output streams.
pub fn coefficient_reconstruction_error(
    real: &ChannelRealization,
    bf: &BeamformerSet,
    alloc: &PowerAllocation,
    stream: &mut RandomStream,
) -> f64 {
    let lm = real.streams();
    let n = real.relay_antennas;
    let symbol_scale = Complex::new(
        (alloc.source / real.terminal_antennas as f64).sqrt(),
        0.0,
    );
    let symbols = stream.complex_gaussian(lm, 1) * symbol_scale;
    let relay_noise: Vec<_> = (0..real.relays)
        .map(|_| stream.complex_gaussian(n, 1))
        .collect();
    let dest_noise = stream.complex_gaussian(lm, 1);

    let mut received = dest_noise.clone();
    for k in 0..real.relays {
        let r_k = real.stack_first_hop(k) * &symbols + &relay_noise[k];
        let t_k = &bf.transforms[k] * r_k;
        received += real.stack_second_hop(k) * t_k;
    }

    let coeffs = stream_coefficients(real, bf);
    let mut worst: f64 = 0.0;
    for (j, c) in coeffs.iter().enumerate() {
        let mut y = c.signal * symbols[(j, 0)] + dest_noise[(j, 0)];
        let mut others = (0..lm).filter(|&i| i != j);
        for interf in &c.interference {
            let i = others.next().expect("interference index");
            y += interf * symbols[(i, 0)];
        }
        for (k, row) in c.relay_noise.iter().enumerate() {
            y += (row * &relay_noise[k])[(0, 0)];
        }
        let direct = received[(j, 0)];
        worst = worst.max((y - direct).norm() / direct.norm());
    }
    worst
}

/// Per-stream SIR of the direct interference channel: stream `(j, m)` is
/// decoded at antenna `m` of destination `j` with all other streams treated
/// as noise. Source power is `SNR/L` per terminal (single slot).
pub fn direct_sir(real: &DirectChannelRealization, snr: f64) -> Vec<f64> {
    let l = real.pairs;
    let m = real.terminal_antennas;
    let per_stream_power = snr / l as f64 / m as f64;
    let mut out = Vec::with_capacity(l * m);
    for j in 0..l {
        for ant in 0..m {
            let signal = real.gains[j][j][(ant, ant)].norm_sqr() * per_stream_power;
            let mut interference = 0.0;
            for i in 0..l {
                for q in 0..m {
                    if i == j && q == ant {
                        continue;
                    }
                    interference += real.gains[i][j][(ant, q)].norm_sqr() * per_stream_power;
                }
            }
            out.push(signal / (NOISE_POWER + interference));
        }
    }
    out
}

/// Direct per-stream SIR samples pooled over trials.
pub fn direct_sir_samples(cfg: &NetworkConfig) -> Result<Vec<SirSample>> {
    cfg.validate()?;
    let snr = cfg.snr();
    run_indexed(cfg.trials, |t| {
        let mut stream = RandomStream::new(cfg.seed, t);
        let real = draw_direct(cfg, &mut stream);
        Ok(SirSample {
            per_stream: direct_sir(&real, snr),
        })
    })
}

/// Direct-transmission spectral efficiency: single slot, so no 1/2 factor.
pub fn direct_spectral_efficiency(cfg: &NetworkConfig) -> Result<TradeoffPoint> {
    cfg.validate()?;
    let snr = cfg.snr();
    let per_trial = run_indexed(cfg.trials, |t| {
        let mut stream = RandomStream::new(cfg.seed, t);
        let real = draw_direct(cfg, &mut stream);
        Ok(direct_sir(&real, snr)
            .iter()
            .map(|&s| (1.0 + s).log2())
            .sum::<f64>())
    })?;
    let (mean, stderr) = stats::mean_stderr(&per_trial);
    Ok(TradeoffPoint {
        snr,
        spectral_efficiency: mean,
        mc_stderr: stderr,
    })
}

/// Broadcast-cut matrix `Phi = sum_k S_k^H S_k` of stacked first hops;
/// Hermitian positive semidefinite by construction.
pub fn cut_matrix(real: &ChannelRealization) -> DMatrix<C64> {
    let lm = real.streams();
    let mut phi = DMatrix::<C64>::zeros(lm, lm);
    for k in 0..real.relays {
        let s = real.stack_first_hop(k);
        phi += s.adjoint() * s;
    }
    phi
}

/// `log2 det(I + scale * phi)` through a Cholesky factorization.
fn log2_det_identity_plus(phi: &DMatrix<C64>, scale: f64) -> Result<f64> {
    let n = phi.nrows();
    let mut m = phi * Complex::new(scale, 0.0);
    for j in 0..n {
        m[(j, j)] += Complex::new(1.0, 0.0);
    }
    let chol = m
        .cholesky()
        .ok_or_else(|| Error::InvalidConfig("cut matrix not positive definite".into()))?;
    let l = chol.l();
    let mut ln_det = 0.0;
    for j in 0..n {
        ln_det += 2.0 * l[(j, j)].re.ln();
    }
    Ok(ln_det / std::f64::consts::LN_2)
}

/// Empirical cut-set bound on spectral efficiency: Monte Carlo mean of
/// `(1/2) log2 |I + (p_s/(M N0 B)) Phi|` with all power at the sources
/// (`p_s = 2 SNR / L`, `p_r = 0`).
pub fn cutset_bound_empirical(cfg: &NetworkConfig) -> Result<TradeoffPoint> {
    cfg.validate()?;
    let cut_cfg = cfg.with_scheme(Scheme::Cutset);
    let alloc = resolve_power_allocation(&cut_cfg)?;
    let scale = alloc.source / cfg.terminal_antennas as f64 / NOISE_POWER;
    let per_trial = run_indexed(cfg.trials, |t| {
        let mut stream = RandomStream::new(cfg.seed, t);
        let real = draw_realization(cfg, &mut stream);
        Ok(0.5 * log2_det_identity_plus(&cut_matrix(&real), scale)?)
    })?;
    let (mean, stderr) = stats::mean_stderr(&per_trial);
    Ok(TradeoffPoint {
        snr: cfg.snr(),
        spectral_efficiency: mean,
        mc_stderr: stderr,
    })
}

/// One tradeoff point for any scheme; relay schemes honor the configured
/// duty cycle, the baselines ignore it.
pub fn tradeoff_point(cfg: &NetworkConfig) -> Result<TradeoffPoint> {
    match cfg.scheme {
        Scheme::Direct => direct_spectral_efficiency(cfg),
        Scheme::Cutset => cutset_bound_empirical(cfg),
        _ => Ok(relay_kernel(cfg, cfg.alpha)?.point),
    }
}
