//! Power-bandwidth tradeoff sweeps: spectral efficiency C against Eb/N0
//! for the cut-set bound, the three relay schemes, and direct transmission,
//! plus extracted figures of merit per scheme.

use std::path::PathBuf;
use std::time::Instant;

use super::{write_plot, write_table, OutputSink};
use crate::asymptotics::{extract_figures, TradeoffFigures};
use crate::config::{NetworkConfig, Scheme};
use crate::error::{Error, Result};
use crate::link::{bursty_spectral_efficiency, tradeoff_point, TradeoffPoint};
use crate::output::{ExperimentResult, LinePlot, Series};
use crate::stats;

#[derive(Debug, Clone)]
pub struct TradeoffSettings {
    pub base: NetworkConfig,
    pub schemes: Vec<Scheme>,
    pub snr_db_grid: Vec<f64>,
}

impl TradeoffSettings {
    pub fn new(base: NetworkConfig) -> Self {
        Self {
            base,
            schemes: vec![
                Scheme::Cutset,
                Scheme::Mf,
                Scheme::Zf,
                Scheme::Lmmse,
                Scheme::Direct,
            ],
            snr_db_grid: default_snr_grid(),
        }
    }
}

/// The default sweep: -20 dB to 40 dB in 2 dB steps.
pub fn default_snr_grid() -> Vec<f64> {
    snr_grid(-20.0, 40.0, 2.0)
}

pub fn snr_grid(start_db: f64, stop_db: f64, step_db: f64) -> Vec<f64> {
    assert!(step_db > 0.0 && stop_db >= start_db);
    let count = ((stop_db - start_db) / step_db).round() as usize;
    (0..=count).map(|i| start_db + i as f64 * step_db).collect()
}

#[derive(Debug, Clone)]
pub struct SchemeCurve {
    pub scheme: Scheme,
    pub points: Vec<TradeoffPoint>,
    pub redraws: u64,
    pub figures: Option<TradeoffFigures>,
    pub table: ExperimentResult,
}

#[derive(Debug, Clone)]
pub struct TradeoffOutcome {
    pub curves: Vec<SchemeCurve>,
    pub figures_table: ExperimentResult,
    pub files: Vec<PathBuf>,
}

/// Sweep one scheme over the SNR grid with common per-trial random numbers
/// across schemes and grid points.
pub fn sweep_scheme(
    base: &NetworkConfig,
    scheme: Scheme,
    snr_db_grid: &[f64],
) -> Result<(Vec<TradeoffPoint>, u64)> {
    let mut points = Vec::with_capacity(snr_db_grid.len());
    let mut redraws = 0;
    for &snr_db in snr_db_grid {
        let cfg = NetworkConfig {
            snr_db,
            scheme,
            ..base.clone()
        };
        if scheme.is_relay() {
            let run = bursty_spectral_efficiency(&cfg)?;
            redraws += run.redraws;
            points.push(run.point);
        } else {
            points.push(tradeoff_point(&cfg)?);
        }
    }
    Ok((points, redraws))
}

/// Interpolated Eb/N0 (dB) where a measured curve crosses spectral
/// efficiency `c_target`, using log-SNR interpolation between the first
/// bracketing pair. None when the curve never reaches the target.
pub fn ebn0_db_at(points: &[TradeoffPoint], c_target: f64) -> Option<f64> {
    for w in points.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if (a.spectral_efficiency <= c_target) != (b.spectral_efficiency <= c_target) {
            let t = (c_target - a.spectral_efficiency)
                / (b.spectral_efficiency - a.spectral_efficiency);
            let snr_db = a.snr_db() + t * (b.snr_db() - a.snr_db());
            return Some(snr_db - stats::db_from_linear(c_target));
        }
    }
    None
}

/// Series of (Eb/N0 dB, C) pairs for plotting.
pub fn curve_points_to_series(label: impl Into<String>, points: &[TradeoffPoint]) -> Series {
    Series::new(
        label,
        points
            .iter()
            .map(|p| (p.eb_n0_db(), p.spectral_efficiency))
            .collect(),
    )
}

fn curve_table(experiment: &str, cfg: &NetworkConfig, points: &[TradeoffPoint]) -> ExperimentResult {
    let mut table = ExperimentResult::new(experiment, cfg, &["snr_db", "C", "ebn0_db", "stderr"]);
    for p in points {
        table.push(vec![
            p.snr_db(),
            p.spectral_efficiency,
            p.eb_n0_db(),
            p.mc_stderr,
        ]);
    }
    table
}

pub fn run(settings: &TradeoffSettings, sink: Option<&OutputSink>) -> Result<TradeoffOutcome> {
    if settings.schemes.is_empty() {
        return Err(Error::InvalidConfig("empty scheme list".into()));
    }
    if settings.snr_db_grid.len() < 2 {
        return Err(Error::InvalidConfig("SNR grid needs at least 2 points".into()));
    }
    let started = Instant::now();
    let mut curves = Vec::new();
    let mut files = Vec::new();
    let mut plot = LinePlot::new(
        "Power-bandwidth tradeoff",
        "Eb/N0 (dB)",
        "C (b/s/Hz)",
    );
    let mut figures_table = ExperimentResult::new(
        "tradeoff/figures",
        &settings.base,
        &["ebn0_min_db", "s0", "s_inf", "ebn0_imp_db", "saturated"],
    )
    .with_labels("scheme");

    for &scheme in &settings.schemes {
        let cfg = settings.base.with_scheme(scheme);
        cfg.validate()?;
        let (points, redraws) = sweep_scheme(&settings.base, scheme, &settings.snr_db_grid)?;
        let mut table = curve_table(&format!("tradeoff/{scheme}"), &cfg, &points);
        table.wall_seconds = started.elapsed().as_secs_f64();
        files.extend(write_table(sink, &format!("tradeoff_{scheme}"), &table)?);

        let samples: Vec<(f64, f64)> = points
            .iter()
            .map(|p| (p.snr, p.spectral_efficiency))
            .collect();
        let figures = extract_figures(&samples).ok();
        if let Some(f) = &figures {
            figures_table.push_labeled(
                scheme.to_string(),
                vec![
                    stats::db_from_linear(f.ebn0_min),
                    f.s0,
                    f.s_inf,
                    stats::db_from_linear(f.ebn0_imp),
                    f.saturated as u8 as f64,
                ],
            );
        }
        plot.push(Series::new(
            scheme.to_string(),
            points
                .iter()
                .map(|p| (p.eb_n0_db(), p.spectral_efficiency))
                .collect(),
        ));
        curves.push(SchemeCurve {
            scheme,
            points,
            redraws,
            figures,
            table,
        });
    }

    figures_table.wall_seconds = started.elapsed().as_secs_f64();
    files.extend(write_table(sink, "tradeoff_figures", &figures_table)?);
    files.extend(write_plot(sink, "tradeoff", &plot)?);
    Ok(TradeoffOutcome {
        curves,
        figures_table,
        files,
    })
}
