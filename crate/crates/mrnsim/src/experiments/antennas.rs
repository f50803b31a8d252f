//! Antenna scaling experiment: tradeoff curves of the L-MMSE scheme for
//! several (M, N) antenna configurations. More relay antennas shift the
//! curve down (better energy efficiency); more terminal antennas raise the
//! slopes (better spectral efficiency).

use std::path::PathBuf;
use std::time::Instant;

use super::tradeoff::{curve_points_to_series, ebn0_db_at, sweep_scheme};
use super::{write_plot, write_table, OutputSink};
use crate::asymptotics::extract_figures;
use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::link::TradeoffPoint;
use crate::output::{ExperimentResult, LinePlot};

#[derive(Debug, Clone)]
pub struct AntennaSettings {
    /// Base config; `terminal_antennas`/`relay_antennas` are overridden per
    /// curve.
    pub base: NetworkConfig,
    /// (M, N) pairs; each needs `N >= L*M` for the pseudo-inverse schemes.
    pub antenna_pairs: Vec<(usize, usize)>,
    pub snr_db_grid: Vec<f64>,
    /// Spectral efficiency at which curves are compared.
    pub c_target: f64,
}

impl AntennaSettings {
    pub fn new(base: NetworkConfig) -> Self {
        Self {
            base,
            antenna_pairs: vec![(1, 2), (1, 4), (2, 4)],
            snr_db_grid: super::tradeoff::default_snr_grid(),
            c_target: 4.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AntennaCurve {
    pub terminal_antennas: usize,
    pub relay_antennas: usize,
    pub points: Vec<TradeoffPoint>,
    pub fitted_high_slope: Option<f64>,
    pub ebn0_db_at_target: Option<f64>,
    pub table: ExperimentResult,
}

#[derive(Debug, Clone)]
pub struct AntennaOutcome {
    pub curves: Vec<AntennaCurve>,
    pub summary: ExperimentResult,
    pub files: Vec<PathBuf>,
}

pub fn run(settings: &AntennaSettings, sink: Option<&OutputSink>) -> Result<AntennaOutcome> {
    if settings.antenna_pairs.is_empty() {
        return Err(Error::InvalidConfig("empty antenna pair list".into()));
    }
    let started = Instant::now();
    let mut curves = Vec::new();
    let mut files = Vec::new();
    let mut plot = LinePlot::new(
        "Antenna scaling tradeoff",
        "Eb/N0 (dB)",
        "C (b/s/Hz)",
    );
    for &(m, n) in &settings.antenna_pairs {
        let cfg = NetworkConfig {
            terminal_antennas: m,
            relay_antennas: n,
            ..settings.base.clone()
        };
        cfg.validate()?;
        let (points, _) = sweep_scheme(&cfg, cfg.scheme, &settings.snr_db_grid)?;
        let mut table = ExperimentResult::new(
            format!("antennas/M{m}N{n}"),
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
        files.extend(write_table(sink, &format!("antennas_m{m}_n{n}"), &table)?);
        plot.push(curve_points_to_series(format!("M={m}, N={n}"), &points));

        let samples: Vec<(f64, f64)> = points
            .iter()
            .map(|p| (p.snr, p.spectral_efficiency))
            .collect();
        let slope = extract_figures(&samples).ok().map(|f| f.high_slope_raw);
        curves.push(AntennaCurve {
            terminal_antennas: m,
            relay_antennas: n,
            fitted_high_slope: slope,
            ebn0_db_at_target: ebn0_db_at(&points, settings.c_target),
            points,
            table,
        });
    }

    let mut summary = ExperimentResult::new(
        "antennas/summary",
        &settings.base,
        &["M", "N", "ebn0_db_at_target", "c_target", "s_inf_fitted"],
    );
    for c in &curves {
        summary.push(vec![
            c.terminal_antennas as f64,
            c.relay_antennas as f64,
            c.ebn0_db_at_target.unwrap_or(f64::NAN),
            settings.c_target,
            c.fitted_high_slope.unwrap_or(f64::NAN),
        ]);
    }
    summary.wall_seconds = started.elapsed().as_secs_f64();
    files.extend(write_table(sink, "antennas_summary", &summary)?);
    files.extend(write_plot(sink, "antennas", &plot)?);

    Ok(AntennaOutcome {
        curves,
        summary,
        files,
    })
}
