//! Bursty-signaling tradeoff curves: one sweep per duty cycle, with a
//! summary comparing energy per bit at a low target rate. Reducing the
//! duty cycle trades spectral efficiency for energy efficiency in the
//! low-rate regime.

use std::path::PathBuf;
use std::time::Instant;

use super::tradeoff::{curve_points_to_series, ebn0_db_at};
use super::{write_plot, write_table, OutputSink};
use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::link::{bursty_spectral_efficiency, TradeoffPoint};
use crate::output::{ExperimentResult, LinePlot};

#[derive(Debug, Clone)]
pub struct BurstySettings {
    /// Base config; `scheme` should be a relay scheme (zero forcing in the
    /// reference experiment) and `alpha` is overridden per curve.
    pub base: NetworkConfig,
    pub alphas: Vec<f64>,
    pub snr_db_grid: Vec<f64>,
    /// Spectral efficiency at which the summary compares Eb/N0.
    pub c_target: f64,
}

impl BurstySettings {
    pub fn new(base: NetworkConfig) -> Self {
        Self {
            base,
            alphas: vec![0.02, 0.1, 0.5, 1.0],
            snr_db_grid: super::tradeoff::default_snr_grid(),
            c_target: 0.2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BurstyCurve {
    pub alpha: f64,
    pub points: Vec<TradeoffPoint>,
    /// Grid points where the configured duty cycle violated the burst
    /// high-SNR condition (1st-percentile check).
    pub warned_points: usize,
    pub table: ExperimentResult,
}

#[derive(Debug, Clone)]
pub struct BurstyOutcome {
    pub curves: Vec<BurstyCurve>,
    pub summary: ExperimentResult,
    /// Eb/N0 (dB) at the target rate per duty cycle, where reachable.
    pub ebn0_at_target: Vec<(f64, Option<f64>)>,
    /// True when Eb/N0 at the target rate strictly decreases as the duty
    /// cycle decreases.
    pub monotone_in_burstiness: bool,
    pub files: Vec<PathBuf>,
}

pub fn run(settings: &BurstySettings, sink: Option<&OutputSink>) -> Result<BurstyOutcome> {
    if settings.alphas.is_empty() {
        return Err(Error::InvalidConfig("empty duty-cycle list".into()));
    }
    for &a in &settings.alphas {
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::InvalidConfig(format!("alpha {a} outside (0, 1]")));
        }
    }
    let started = Instant::now();
    let mut curves = Vec::new();
    let mut files = Vec::new();
    let mut plot = LinePlot::new(
        "Bursty power-bandwidth tradeoff",
        "Eb/N0 (dB)",
        "C (b/s/Hz)",
    );

    for &alpha in &settings.alphas {
        let mut points = Vec::with_capacity(settings.snr_db_grid.len());
        let mut warned = 0;
        for &snr_db in &settings.snr_db_grid {
            let cfg = NetworkConfig {
                snr_db,
                alpha,
                ..settings.base.clone()
            };
            let run = bursty_spectral_efficiency(&cfg)?;
            if run.duty_cycle_warning {
                warned += 1;
            }
            points.push(run.point);
        }
        let cfg = NetworkConfig {
            alpha,
            ..settings.base.clone()
        };
        let mut table = ExperimentResult::new(
            format!("bursty/alpha={alpha}"),
            &cfg,
            &["snr_db", "C", "ebn0_db", "stderr"],
        );
        for p in &points {
            table.push(vec![
                p.snr_db(),
                p.spectral_efficiency,
                p.eb_n0_db(),
                p.mc_stderr,
            ]);
        }
        table.wall_seconds = started.elapsed().as_secs_f64();
        files.extend(write_table(sink, &format!("bursty_alpha_{alpha}"), &table)?);
        plot.push(curve_points_to_series(format!("alpha={alpha}"), &points));
        curves.push(BurstyCurve {
            alpha,
            points,
            warned_points: warned,
            table,
        });
    }

    let ebn0_at_target: Vec<(f64, Option<f64>)> = curves
        .iter()
        .map(|c| (c.alpha, ebn0_db_at(&c.points, settings.c_target)))
        .collect();

    // Ordering check at the target rate, walking duty cycles from largest
    // to smallest.
    let mut by_alpha: Vec<&(f64, Option<f64>)> = ebn0_at_target.iter().collect();
    by_alpha.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut monotone = by_alpha.len() > 1;
    for w in by_alpha.windows(2) {
        match (w[0].1, w[1].1) {
            (Some(hi), Some(lo)) if lo < hi => {}
            _ => monotone = false,
        }
    }

    let mut summary = ExperimentResult::new(
        "bursty/summary",
        &settings.base,
        &["alpha", "ebn0_db_at_target", "c_target", "warned_points"],
    );
    for (c, (alpha, e)) in curves.iter().zip(&ebn0_at_target) {
        summary.push(vec![
            *alpha,
            e.unwrap_or(f64::NAN),
            settings.c_target,
            c.warned_points as f64,
        ]);
    }
    summary.wall_seconds = started.elapsed().as_secs_f64();
    files.extend(write_table(sink, "bursty_summary", &summary)?);
    files.extend(write_plot(sink, "bursty", &plot)?);

    Ok(BurstyOutcome {
        curves,
        summary,
        ebn0_at_target,
        monotone_in_burstiness: monotone,
        files,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Scheme;
    use crate::experiments::tradeoff::{snr_grid, sweep_scheme};

    fn base() -> NetworkConfig {
        NetworkConfig {
            relays: 4,
            pairs: 2,
            terminal_antennas: 1,
            relay_antennas: 2,
            scheme: Scheme::Zf,
            trials: 150,
            seed: 9,
            ..NetworkConfig::default()
        }
    }

    #[test]
    fn alpha_one_curve_matches_plain_sweep() {
        let grid = snr_grid(-5.0, 10.0, 5.0);
        let settings = BurstySettings {
            base: base(),
            alphas: vec![1.0],
            snr_db_grid: grid.clone(),
            c_target: 0.2,
        };
        let out = run(&settings, None).unwrap();
        let (plain, _) = sweep_scheme(&base(), Scheme::Zf, &grid).unwrap();
        assert_eq!(out.curves[0].points, plain);
    }

    #[test]
    fn rejects_bad_alphas() {
        let mut s = BurstySettings::new(base());
        s.alphas = vec![0.0];
        assert!(run(&s, None).is_err());
        s.alphas = vec![1.5];
        assert!(run(&s, None).is_err());
    }
}
