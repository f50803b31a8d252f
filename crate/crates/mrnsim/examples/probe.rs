// Temporary numeric probe for acceptance-criterion operating points.
use mrnsim::asymptotics::{
    extract_figures, highsnr_tradeoff_curve, predicted_sir, theta_constants, Regime,
};
use mrnsim::config::{NetworkConfig, Scheme};
use mrnsim::experiments::sir_cdf::{self, SirCdfSettings};
use mrnsim::experiments::tradeoff::{ebn0_db_at, snr_grid, sweep_scheme};
use mrnsim::link::{bursty_spectral_efficiency, sir_samples};
use mrnsim::stats;

fn base() -> NetworkConfig {
    NetworkConfig {
        relays: 10,
        pairs: 2,
        terminal_antennas: 1,
        relay_antennas: 2,
        snr_db: 20.0,
        scheme: Scheme::Zf,
        trials: 10_000,
        seed: 42,
        ..NetworkConfig::default()
    }
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "all".into());

    if which == "fig3" || which == "all" {
        let t = std::time::Instant::now();
        let mut settings = SirCdfSettings::new(base());
        settings.base.trials = 10_000;
        let out = sir_cdf::run(&settings, None).unwrap();
        for c in &out.curves {
            println!(
                "{:>8}: median {:7.2} dB  iqr {:5.2}",
                c.label, c.median_db, c.quartile_spread_db
            );
        }
        println!(
            "fig3 slope = {:.3} dB/doubling  ({:.1?})",
            out.median_slope_db_per_doubling.unwrap(),
            t.elapsed()
        );
    }

    if which == "mf-low" || which == "all" {
        // Criterion 3: MF at K=256, SNR=-20 dB vs low-SNR prediction.
        let t = std::time::Instant::now();
        let cfg = NetworkConfig {
            relays: 256,
            snr_db: -20.0,
            scheme: Scheme::Mf,
            trials: 2_000,
            ..base()
        };
        let run = sir_samples(&cfg).unwrap();
        let all: Vec<f64> = run
            .samples
            .iter()
            .flat_map(|s| s.per_stream.iter().copied())
            .collect();
        let (mean, se) = stats::mean_stderr(&all);
        let thetas = theta_constants(cfg.relay_antennas, &cfg.path_loss);
        let pred = predicted_sir(Regime::Low, 256, 2, 1, cfg.snr(), &thetas).unwrap();
        println!(
            "mf-low: mean SIR {mean:.6} +- {se:.6}, prediction {pred:.6}, ratio {:.4}  ({:.1?})",
            mean / pred,
            t.elapsed()
        );
    }

    if which == "slopes" || which == "all" {
        // Criterion 5: fitted slopes over [30, 40] dB.
        let t = std::time::Instant::now();
        let grid = snr_grid(30.0, 40.0, 2.0);
        for scheme in [Scheme::Zf, Scheme::Lmmse, Scheme::Mf, Scheme::Cutset] {
            let (points, _) = sweep_scheme(&base(), scheme, &grid).unwrap();
            let xs: Vec<f64> = points.iter().map(|p| p.snr.log2()).collect();
            let ys: Vec<f64> = points.iter().map(|p| p.spectral_efficiency).collect();
            let (slope, _) = stats::linear_fit(&xs, &ys);
            println!("slope {scheme}: {slope:.4} b/s/Hz per 3.01 dB");
        }
        println!("({:.1?})", t.elapsed());
    }

    if which == "kshift" || which == "all" {
        // Criterion 6: Eb/N0 at C = 4 for K = 10 vs K = 20.
        let t = std::time::Instant::now();
        let grid = snr_grid(0.0, 24.0, 2.0);
        let mut e = Vec::new();
        for k in [10usize, 20] {
            let cfg = NetworkConfig {
                relays: k,
                ..base()
            };
            let (points, _) = sweep_scheme(&cfg, Scheme::Zf, &grid).unwrap();
            let ebn0 = ebn0_db_at(&points, 4.0).unwrap();
            println!("K={k}: Eb/N0 at C=4 is {ebn0:.3} dB");
            e.push(ebn0);
        }
        println!("kshift drop = {:.3} dB  ({:.1?})", e[0] - e[1], t.elapsed());
    }

    if which == "bursty" || which == "all" {
        // Criterion 7 landscape: Eb/N0 at several C targets per alpha.
        let t = std::time::Instant::now();
        let grid = snr_grid(-20.0, 40.0, 2.0);
        let mut curves = Vec::new();
        for alpha in [0.5, 0.1, 0.02] {
            let mut points = Vec::new();
            for &snr_db in &grid {
                let cfg = NetworkConfig {
                    snr_db,
                    alpha,
                    ..base()
                };
                points.push(bursty_spectral_efficiency(&cfg).unwrap().point);
            }
            curves.push((alpha, points));
        }
        for c_target in [0.2, 0.1, 0.05, 0.04, 0.03] {
            let es: Vec<String> = curves
                .iter()
                .map(|(a, pts)| {
                    format!(
                        "a={a}: {}",
                        ebn0_db_at(pts, c_target)
                            .map(|v| format!("{v:6.2} dB"))
                            .unwrap_or_else(|| "unreached".into())
                    )
                })
                .collect();
            println!("C={c_target}: {}", es.join("  "));
        }
        println!("({:.1?})", t.elapsed());
    }

    if which == "overlay" || which == "all" {
        // Bursty analytic overlay at N = 4 (finite theta2), alpha = 0.5.
        let t = std::time::Instant::now();
        let alpha = 0.5;
        let cfg = NetworkConfig {
            relay_antennas: 4,
            alpha,
            trials: 10_000,
            ..base()
        };
        let grid = snr_grid(16.0, 30.0, 2.0);
        let mut points = Vec::new();
        for &snr_db in &grid {
            let c = NetworkConfig { snr_db, ..cfg.clone() };
            points.push(bursty_spectral_efficiency(&c).unwrap().point);
        }
        let shape = 4 - 2 + 1;
        let thetas = theta_constants(shape, &cfg.path_loss);
        for p in &points {
            let c = p.spectral_efficiency;
            let analytic =
                highsnr_tradeoff_curve(&[c], 10, 2, 1, &thetas, alpha).unwrap()[0];
            println!(
                "C {c:6.3}: MC Eb/N0 {:7.3}, Eq-27 {analytic:7.3}, ratio {:.3}",
                p.eb_n0(),
                p.eb_n0() / analytic
            );
        }
        println!("({:.1?})", t.elapsed());
    }

    if which == "highslope-n4" {
        // Check the fitted slope at N=4 (finite theta2) for comparison.
        let cfg = NetworkConfig {
            relay_antennas: 4,
            ..base()
        };
        let grid = snr_grid(30.0, 40.0, 2.0);
        for scheme in [Scheme::Zf, Scheme::Lmmse] {
            let (points, _) = sweep_scheme(&cfg, scheme, &grid).unwrap();
            let samples: Vec<(f64, f64)> = points
                .iter()
                .map(|p| (p.snr, p.spectral_efficiency))
                .collect();
            let xs: Vec<f64> = samples.iter().map(|s| s.0.log2()).collect();
            let ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
            println!("{scheme}: slope {:.4}", stats::linear_fit(&xs, &ys).0);
        }
        let _ = extract_figures(&[(1.0, 1.0)]);
    }
}
