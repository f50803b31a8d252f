//! Empirical per-stream SIR distributions for a relay scheme across relay
//! counts, with the direct-transmission baseline, as in the SIR-statistics
//! experiment. The normalized variant centers each CDF on its median to
//! expose how the distribution tightens with more relays.

use std::path::PathBuf;
use std::time::Instant;

use super::{write_plot, write_table, OutputSink};
use crate::config::NetworkConfig;
use crate::error::Result;
use crate::link::{direct_sir_samples, sir_samples};
use crate::output::{ExperimentResult, LinePlot, Series};
use crate::stats;

#[derive(Debug, Clone)]
pub struct SirCdfSettings {
    /// Base configuration; `relays` is overridden by each entry of
    /// `relay_counts` and `scheme` must be a relay scheme.
    pub base: NetworkConfig,
    pub relay_counts: Vec<usize>,
    /// Center each CDF on its median (dB shift).
    pub normalized: bool,
    /// Include the direct-transmission baseline curve.
    pub include_direct: bool,
    /// Number of quantile points per emitted CDF table.
    pub cdf_points: usize,
}

impl SirCdfSettings {
    pub fn new(base: NetworkConfig) -> Self {
        Self {
            base,
            relay_counts: vec![1, 2, 4, 8, 16],
            normalized: false,
            include_direct: true,
            cdf_points: 512,
        }
    }

    pub fn normalized(base: NetworkConfig) -> Self {
        Self {
            relay_counts: vec![1, 64],
            normalized: true,
            include_direct: false,
            ..Self::new(base)
        }
    }
}

/// One empirical CDF curve.
#[derive(Debug, Clone)]
pub struct CdfCurve {
    pub label: String,
    /// Relay count, or None for the direct baseline.
    pub relays: Option<usize>,
    pub median_db: f64,
    pub quartile_spread_db: f64,
    pub table: ExperimentResult,
}

#[derive(Debug, Clone)]
pub struct SirCdfOutcome {
    pub curves: Vec<CdfCurve>,
    pub summary: ExperimentResult,
    /// Least-squares slope of the relay medians (dB) against log2 K.
    pub median_slope_db_per_doubling: Option<f64>,
    pub redraws: u64,
    pub files: Vec<PathBuf>,
}

fn cdf_rows(sorted_db: &[f64], points: usize, shift_db: f64) -> Vec<Vec<f64>> {
    (0..=points)
        .map(|i| {
            let q = i as f64 / points as f64;
            vec![stats::quantile_sorted(sorted_db, q) - shift_db, q]
        })
        .collect()
}

pub fn run(settings: &SirCdfSettings, sink: Option<&OutputSink>) -> Result<SirCdfOutcome> {
    let started = Instant::now();
    let mut curves = Vec::new();
    let mut redraws = 0;
    let mut files = Vec::new();
    let mut plot = LinePlot::new(
        if settings.normalized {
            "Normalized per-stream SIR CDF"
        } else {
            "Per-stream SIR CDF"
        },
        "SIR (dB)",
        "cumulative probability",
    );

    for &k in &settings.relay_counts {
        let cfg = NetworkConfig {
            relays: k,
            ..settings.base.clone()
        };
        let run = sir_samples(&cfg)?;
        redraws += run.redraws;
        let mut db: Vec<f64> = run
            .samples
            .iter()
            .flat_map(|s| s.per_stream.iter().map(|&v| stats::db_from_linear(v)))
            .collect();
        stats::sort_ascending(&mut db);
        let median = stats::median_sorted(&db);
        let spread = stats::quantile_sorted(&db, 0.75) - stats::quantile_sorted(&db, 0.25);
        let shift = if settings.normalized { median } else { 0.0 };

        let label = format!("K={k}");
        let mut table = ExperimentResult::new(
            format!("sir-cdf/{label}"),
            &cfg,
            &["sir_db", "cum_prob"],
        );
        table.rows = cdf_rows(&db, settings.cdf_points, shift);
        table.wall_seconds = started.elapsed().as_secs_f64();
        plot.push(Series::new(
            label.clone(),
            table.rows.iter().map(|r| (r[0], r[1])).collect(),
        ));
        files.extend(write_table(sink, &format!("sir_cdf_k{k}"), &table)?);
        curves.push(CdfCurve {
            label,
            relays: Some(k),
            median_db: median,
            quartile_spread_db: spread,
            table,
        });
    }

    if settings.include_direct {
        let cfg = NetworkConfig {
            relays: 0,
            scheme: crate::config::Scheme::Direct,
            ..settings.base.clone()
        };
        let samples = direct_sir_samples(&cfg)?;
        let mut db: Vec<f64> = samples
            .iter()
            .flat_map(|s| s.per_stream.iter().map(|&v| stats::db_from_linear(v)))
            .collect();
        stats::sort_ascending(&mut db);
        let median = stats::median_sorted(&db);
        let spread = stats::quantile_sorted(&db, 0.75) - stats::quantile_sorted(&db, 0.25);
        let mut table =
            ExperimentResult::new("sir-cdf/direct", &cfg, &["sir_db", "cum_prob"]);
        table.rows = cdf_rows(&db, settings.cdf_points, 0.0);
        plot.push(Series::new(
            "direct",
            table.rows.iter().map(|r| (r[0], r[1])).collect(),
        ));
        files.extend(write_table(sink, "sir_cdf_direct", &table)?);
        curves.push(CdfCurve {
            label: "direct".into(),
            relays: None,
            median_db: median,
            quartile_spread_db: spread,
            table,
        });
    }

    let mut summary = ExperimentResult::new(
        "sir-cdf/summary",
        &settings.base,
        &["median_sir_db", "iqr_db"],
    )
    .with_labels("curve");
    for c in &curves {
        summary.push_labeled(c.label.clone(), vec![c.median_db, c.quartile_spread_db]);
    }
    summary.wall_seconds = started.elapsed().as_secs_f64();
    files.extend(write_table(sink, "sir_cdf_summary", &summary)?);
    files.extend(write_plot(sink, "sir_cdf", &plot)?);

    let relay_medians: Vec<(f64, f64)> = curves
        .iter()
        .filter_map(|c| c.relays.map(|k| ((k as f64).log2(), c.median_db)))
        .collect();
    let median_slope = if relay_medians.len() >= 2 {
        let xs: Vec<f64> = relay_medians.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = relay_medians.iter().map(|p| p.1).collect();
        Some(stats::linear_fit(&xs, &ys).0)
    } else {
        None
    };

    Ok(SirCdfOutcome {
        curves,
        summary,
        median_slope_db_per_doubling: median_slope,
        redraws,
        files,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Scheme;

    fn small_base() -> NetworkConfig {
        NetworkConfig {
            relays: 1,
            pairs: 2,
            terminal_antennas: 1,
            relay_antennas: 2,
            snr_db: 20.0,
            scheme: Scheme::Zf,
            trials: 300,
            seed: 11,
            ..NetworkConfig::default()
        }
    }

    #[test]
    fn produces_expected_curve_set() {
        let mut settings = SirCdfSettings::new(small_base());
        settings.relay_counts = vec![1, 2];
        let out = run(&settings, None).unwrap();
        // Two relay curves plus the direct baseline.
        assert_eq!(out.curves.len(), 3);
        assert!(out.median_slope_db_per_doubling.is_some());
        for c in &out.curves {
            assert_eq!(c.table.rows.len(), settings.cdf_points + 1);
            // Cumulative probabilities span [0, 1] and SIR is nondecreasing.
            assert_eq!(c.table.rows[0][1], 0.0);
            assert_eq!(c.table.rows.last().unwrap()[1], 1.0);
            for w in c.table.rows.windows(2) {
                assert!(w[1][0] >= w[0][0]);
            }
        }
    }

    #[test]
    fn normalized_curves_center_on_median() {
        let mut settings = SirCdfSettings::normalized(small_base());
        settings.relay_counts = vec![1, 4];
        let out = run(&settings, None).unwrap();
        assert_eq!(out.curves.len(), 2);
        for c in &out.curves {
            let rows = &c.table.rows;
            let mid = stats::quantile_sorted(
                &rows.iter().map(|r| r[0]).collect::<Vec<_>>(),
                0.5,
            );
            assert!(mid.abs() < 0.2, "median offset {mid}");
        }
    }
}
