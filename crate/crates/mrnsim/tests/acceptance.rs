//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the measured values before asserting (run with `-- --nocapture` to
//! see the lines for passing criteria).

use mrnsim::asymptotics::{
    cstar_over_lm, extract_figures_fn, lowsnr_tradeoff_curve, min_energy_constant, predicted_sir,
    theta_constants, Regime,
};
use mrnsim::beamformer::{build_beamformer_set, build_output_beamformer, conditional_transmit_power};
use mrnsim::channel::draw_realization;
use mrnsim::config::{resolve_power_allocation, BetaPolicy, NetworkConfig, PathLossModel, Scheme};
use mrnsim::experiments::sir_cdf::{self, SirCdfSettings};
use mrnsim::experiments::tradeoff::{ebn0_db_at, snr_grid, sweep_scheme};
use mrnsim::link::{
    bursty_spectral_efficiency, coefficient_reconstruction_error, sir_samples,
    spectral_efficiency, stream_coefficients,
};
use mrnsim::output::ExperimentResult;
use mrnsim::random::RandomStream;
use mrnsim::stats;
use statrs::distribution::{ContinuousCDF, Gamma as GammaDist};

/// Reference network of the numerical experiments: K=10, L=2, M=1, N=2.
fn reference() -> NetworkConfig {
    NetworkConfig {
        relays: 10,
        pairs: 2,
        terminal_antennas: 1,
        relay_antennas: 2,
        snr_db: 20.0,
        scheme: Scheme::Zf,
        beta: BetaPolicy::Auto,
        alpha: 1.0,
        path_loss: PathLossModel::Constant { e_db: 0.0, f_db: 0.0 },
        trials: 10_000,
        seed: 42,
    }
}

fn report(id: u32, name: &str, passed: bool, detail: &str) {
    println!(
        "criterion {id:02} ({name}): {} - {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
}

/// 1. Zero forcing cancels interference exactly: interference-to-signal
/// power ratio < 1e-20 on 100 realizations.
#[test]
fn criterion_01_zf_exact_cancellation() {
    let cfg = NetworkConfig {
        trials: 100,
        ..reference()
    };
    let alloc = resolve_power_allocation(&cfg).unwrap();
    let mut worst: f64 = 0.0;
    for t in 0..cfg.trials {
        let mut stream = RandomStream::new(cfg.seed, t);
        let real = draw_realization(&cfg, &mut stream);
        let bf = build_beamformer_set(&real, Scheme::Zf, &alloc).unwrap();
        for c in stream_coefficients(&real, &bf) {
            let sig = c.signal.norm_sqr();
            for i in &c.interference {
                worst = worst.max(i.norm_sqr() / sig);
            }
        }
    }
    let passed = worst < 1e-20;
    report(
        1,
        "zf-exact-cancellation",
        passed,
        &format!("max interference/signal power ratio {worst:.3e}, required < 1e-20"),
    );
    assert!(passed, "interference-to-signal power ratio {worst:.3e} >= 1e-20");
}

/// 2. SIR statistics reproduction: median SIR slope 3.01 +- 0.5 dB per
/// doubling of K over K in {1..16}; direct median more than 10 dB below
/// every relay median.
#[test]
fn criterion_02_sir_cdf_scaling() {
    let out = sir_cdf::run(&SirCdfSettings::new(reference()), None).unwrap();
    let slope = out.median_slope_db_per_doubling.unwrap();
    let direct_median = out
        .curves
        .iter()
        .find(|c| c.relays.is_none())
        .unwrap()
        .median_db;
    let min_relay_median = out
        .curves
        .iter()
        .filter(|c| c.relays.is_some())
        .map(|c| c.median_db)
        .fold(f64::INFINITY, f64::min);
    let gap = min_relay_median - direct_median;
    let slope_ok = (slope - 3.01).abs() <= 0.5;
    let gap_ok = gap > 10.0;
    report(
        2,
        "sir-cdf-scaling",
        slope_ok && gap_ok,
        &format!(
            "slope {slope:.3} dB/doubling (required 3.01 +- 0.5); \
             smallest relay-vs-direct median gap {gap:.2} dB (required > 10)"
        ),
    );
    assert!(slope_ok, "median slope {slope:.3} outside 3.01 +- 0.5");
    assert!(
        gap_ok,
        "direct-transmission median sits {gap:.2} dB below the K=1 relay median; \
         the criterion requires more than 10 dB against every relay curve. \
         Measured maximum achievable gap over the power split is ~9.6 dB at \
         this operating point, so the threshold is not reachable; all larger \
         relay counts clear it (12.5 to 21 dB)."
    );
}

/// 3. Low-SNR asymptote: MF mean SIR at K=256, SNR=-20 dB within 15% of
/// SNR^2 K theta1^2 / (L^3 M^3) with theta1 = (Gamma(N+1/2)/Gamma(N))^2.
#[test]
fn criterion_03_mf_low_snr_asymptote() {
    let cfg = NetworkConfig {
        relays: 256,
        snr_db: -20.0,
        scheme: Scheme::Mf,
        trials: 2_000,
        ..reference()
    };
    let run = sir_samples(&cfg).unwrap();
    let all: Vec<f64> = run
        .samples
        .iter()
        .flat_map(|s| s.per_stream.iter().copied())
        .collect();
    let (mean, _) = stats::mean_stderr(&all);
    let thetas = theta_constants(cfg.relay_antennas, &cfg.path_loss);
    let predicted = predicted_sir(Regime::Low, 256, 2, 1, cfg.snr(), &thetas).unwrap();
    let rel = (mean - predicted) / predicted;
    let passed = rel.abs() < 0.15;
    report(
        3,
        "mf-low-snr-asymptote",
        passed,
        &format!("mean SIR {mean:.6} vs prediction {predicted:.6} ({:+.1}%)", 100.0 * rel),
    );
    assert!(passed, "relative deviation {rel:.3} exceeds 15%");
}

/// 4. Energy-optimal rate and minimum-energy constant: C*/LM = 1.1495 +-
/// 0.001 and constant 2.97 +- 0.01 for LM in {1, 2, 4}, cross-checked
/// against the bisection root of x = 2(1 - e^{-x}).
#[test]
fn criterion_04_cstar_and_energy_constant() {
    let root = cstar_over_lm();
    let constant = min_energy_constant();
    let mut detail = format!("bisection C*/LM = {root:.6}, constant = {constant:.4}");
    let mut passed = (root - 1.1495).abs() <= 0.001 && (constant - 2.97).abs() <= 0.01;
    for lm in [1usize, 2, 4] {
        let theta1 = theta_constants(2, &PathLossModel::default()).theta1;
        let k = 10;
        let grid: Vec<f64> = (1..12_000)
            .map(|i| i as f64 * 2.5e-4 * lm as f64)
            .collect();
        let curve = lowsnr_tradeoff_curve(&grid, k, lm, 1, theta1).unwrap();
        let mut arg = 0;
        for (i, &v) in curve.iter().enumerate() {
            if v < curve[arg] {
                arg = i;
            }
        }
        let ratio = grid[arg] / lm as f64;
        // Constant implied by the measured minimum value.
        let implied = curve[arg] * curve[arg] * theta1 * theta1 * k as f64 / lm as f64;
        detail.push_str(&format!("; LM={lm}: argmin/LM {ratio:.4}, constant {implied:.4}"));
        passed &= (ratio - 1.1495).abs() <= 0.001 && (implied - 2.97).abs() <= 0.01;
        passed &= (ratio - root).abs() <= 0.001;
    }
    report(4, "cstar-energy-constant", passed, &detail);
    assert!(passed, "{detail}");
}

/// 5. High-SNR slopes over [30, 40] dB: ZF and L-MMSE 1.0 +- 0.15 b/s/Hz
/// per 3.01 dB, MF < 0.1 (saturated), cut-set 1.0 +- 0.15.
#[test]
fn criterion_05_high_snr_slopes() {
    let grid = snr_grid(30.0, 40.0, 2.0);
    let mut passed = true;
    let mut detail = String::new();
    for (scheme, lo, hi) in [
        (Scheme::Zf, 0.85, 1.15),
        (Scheme::Lmmse, 0.85, 1.15),
        (Scheme::Mf, -0.1, 0.1),
        (Scheme::Cutset, 0.85, 1.15),
    ] {
        let (points, _) = sweep_scheme(&reference(), scheme, &grid).unwrap();
        let xs: Vec<f64> = points.iter().map(|p| p.snr.log2()).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.spectral_efficiency).collect();
        let (slope, _) = stats::linear_fit(&xs, &ys);
        detail.push_str(&format!("{scheme} {slope:.3}; "));
        passed &= slope >= lo && slope <= hi;
    }
    report(5, "high-snr-slopes", passed, detail.trim_end_matches("; "));
    assert!(passed, "fitted slopes out of range: {detail}");
}

/// 6. K^{-1} energy scaling: Eb/N0 at C = 4 b/s/Hz drops by 3.01 +- 0.6 dB
/// when K doubles from 10 to 20 (zero forcing).
#[test]
fn criterion_06_k_scaling_at_high_snr() {
    let grid = snr_grid(0.0, 24.0, 2.0);
    let mut ebn0 = Vec::new();
    for k in [10usize, 20] {
        let cfg = NetworkConfig {
            relays: k,
            ..reference()
        };
        let (points, _) = sweep_scheme(&cfg, Scheme::Zf, &grid).unwrap();
        ebn0.push(ebn0_db_at(&points, 4.0).expect("curve reaches C = 4"));
    }
    let drop = ebn0[0] - ebn0[1];
    let passed = (drop - 3.01).abs() <= 0.6;
    report(
        6,
        "k-scaling-high-snr",
        passed,
        &format!(
            "Eb/N0 at C=4: K=10 {:.3} dB, K=20 {:.3} dB, drop {drop:.3} dB (required 3.01 +- 0.6)",
            ebn0[0], ebn0[1]
        ),
    );
    assert!(passed, "drop {drop:.3} dB outside 3.01 +- 0.6");
}

/// 7. Bursty signaling: at C = 0.2 b/s/Hz, Eb/N0 strictly decreasing
/// across duty cycles 0.5, 0.1, 0.02; the duty-cycle-1 run is
/// byte-identical to the non-bursty path at the same seed.
#[test]
fn criterion_07_bursty_monotonicity_and_reduction() {
    let base = reference();

    // Byte identity of the alpha = 1 path.
    let plain = spectral_efficiency(&base).unwrap();
    let bursty = bursty_spectral_efficiency(&NetworkConfig {
        alpha: 1.0,
        ..base.clone()
    })
    .unwrap();
    let identical = plain == bursty.point;
    let mut table_plain = ExperimentResult::new("x", &base, &["snr_db", "C", "ebn0_db", "stderr"]);
    table_plain.push(vec![
        plain.snr_db(),
        plain.spectral_efficiency,
        plain.eb_n0_db(),
        plain.mc_stderr,
    ]);
    let mut table_bursty = table_plain.clone();
    table_bursty.rows[0] = vec![
        bursty.point.snr_db(),
        bursty.point.spectral_efficiency,
        bursty.point.eb_n0_db(),
        bursty.point.mc_stderr,
    ];
    let bytes_identical = table_plain.to_csv() == table_bursty.to_csv();

    // Eb/N0 at the target rate per duty cycle.
    let grid = snr_grid(-20.0, 40.0, 2.0);
    let c_target = 0.2;
    let mut at_target = Vec::new();
    for alpha in [0.5, 0.1, 0.02] {
        let mut points = Vec::new();
        for &snr_db in &grid {
            let cfg = NetworkConfig {
                snr_db,
                alpha,
                ..base.clone()
            };
            points.push(bursty_spectral_efficiency(&cfg).unwrap().point);
        }
        at_target.push((alpha, ebn0_db_at(&points, c_target)));
    }
    let values: Vec<f64> = at_target
        .iter()
        .map(|(_, e)| e.expect("curve reaches C = 0.2"))
        .collect();
    let strictly_decreasing = values[0] > values[1] && values[1] > values[2];

    let passed = identical && bytes_identical && strictly_decreasing;
    report(
        7,
        "bursty-monotonicity",
        passed,
        &format!(
            "alpha=1 reduction bitwise {}; Eb/N0 at C=0.2: alpha 0.5 -> {:.2} dB, \
             0.1 -> {:.2} dB, 0.02 -> {:.2} dB (required strictly decreasing)",
            if identical && bytes_identical { "equal" } else { "DIFFERENT" },
            values[0],
            values[1],
            values[2]
        ),
    );
    assert!(identical && bytes_identical, "alpha = 1 run differs from the non-bursty path");
    assert!(
        strictly_decreasing,
        "Eb/N0 at C = 0.2 is not strictly decreasing in burstiness: \
         alpha 0.5 -> {:.2} dB, 0.1 -> {:.2} dB, 0.02 -> {:.2} dB. \
         At this rate the duty-cycle family's optimum sits near alpha = 0.14, \
         so alpha = 0.02 lies far up the bandwidth-limited branch (in-burst \
         rate 10 b/s/Hz per stream); the strict ordering only emerges for \
         targets at or below roughly C = 0.05.",
        values[0],
        values[1],
        values[2]
    );
}

/// 8. Gamma-law identities: matched-filter per-stream gains follow
/// Gamma(N); zero-forcing effective second-hop gains follow
/// Gamma(N - LM + 1). KS tests at significance 0.01 on 1e4 samples.
#[test]
fn criterion_08_gamma_law_identities() {
    let cfg = reference();
    let n = cfg.relay_antennas;
    let lm = cfg.streams();
    let samples = 10_000u64;
    let mut h_gains = Vec::new();
    let mut g_gains = Vec::new();
    let mut zf_gains = Vec::new();
    let single = NetworkConfig {
        relays: 1,
        ..cfg.clone()
    };
    for t in 0..samples {
        let mut stream = RandomStream::new(cfg.seed, t);
        let real = draw_realization(&single, &mut stream);
        let h = real.stack_first_hop(0);
        let g = real.stack_second_hop(0);
        h_gains.push(h.column(0).norm_squared());
        g_gains.push(g.row(0).norm_squared());
        let v = build_output_beamformer(Scheme::Zf, &g, 1.0, n).unwrap();
        zf_gains.push(1.0 / v.column(0).norm_squared());
    }
    let gamma_n = GammaDist::new(n as f64, 1.0).unwrap();
    let gamma_zf = GammaDist::new((n - lm + 1) as f64, 1.0).unwrap();
    let kh = stats::ks_test(&mut h_gains, |x| gamma_n.cdf(x), 0.01);
    let kg = stats::ks_test(&mut g_gains, |x| gamma_n.cdf(x), 0.01);
    let kz = stats::ks_test(&mut zf_gains, |x| gamma_zf.cdf(x), 0.01);
    let passed = kh.passed && kg.passed && kz.passed;
    report(
        8,
        "gamma-law-identities",
        passed,
        &format!(
            "KS D = {:.4}/{:.4} vs Gamma({n}), {:.4} vs Gamma({}), critical {:.4}",
            kh.statistic,
            kg.statistic,
            kz.statistic,
            n - lm + 1,
            kh.critical
        ),
    );
    assert!(passed, "a KS test rejected at significance 0.01");
}

/// 9. Metric-extractor oracle on the AWGN curve C = log2(1 + SNR):
/// S0 = 2 +- 2%, min = ln2 +- 2%, S_inf = 1 +- 2%, imp = 1 +- 5%.
#[test]
fn criterion_09_awgn_extractor_oracle() {
    let f = extract_figures_fn(|snr| (1.0 + snr).log2(), 1e-4, 1e4).unwrap();
    let ln2 = std::f64::consts::LN_2;
    let passed = (f.s0 - 2.0).abs() / 2.0 < 0.02
        && (f.ebn0_min - ln2).abs() / ln2 < 0.02
        && (f.s_inf - 1.0).abs() < 0.02
        && (f.ebn0_imp - 1.0).abs() < 0.05;
    report(
        9,
        "awgn-extractor-oracle",
        passed,
        &format!(
            "S0 {:.4}, min {:.4}, S_inf {:.4}, imp {:.4}",
            f.s0, f.ebn0_min, f.s_inf, f.ebn0_imp
        ),
    );
    assert!(passed, "extracted figures off the AWGN reference");
}

/// 10. Cut-set dominance: over the full default sweep, the empirical
/// cut-set C exceeds every scheme's C at every grid point by more than
/// -3 stderr.
#[test]
fn criterion_10_cutset_dominance() {
    let base = reference();
    let grid = snr_grid(-20.0, 40.0, 2.0);
    let (cut, _) = sweep_scheme(&base, Scheme::Cutset, &grid).unwrap();
    let mut worst = f64::INFINITY;
    let mut worst_at = (Scheme::Cutset, 0.0);
    for scheme in [Scheme::Mf, Scheme::Zf, Scheme::Lmmse, Scheme::Direct] {
        let (points, _) = sweep_scheme(&base, scheme, &grid).unwrap();
        for (c, p) in cut.iter().zip(&points) {
            let margin = (c.spectral_efficiency - p.spectral_efficiency)
                / c.mc_stderr.hypot(p.mc_stderr).max(1e-12);
            if margin < worst {
                worst = margin;
                worst_at = (scheme, p.snr_db());
            }
        }
    }
    let passed = worst > -3.0;
    report(
        10,
        "cutset-dominance",
        passed,
        &format!(
            "worst margin {worst:.1} stderr units ({} at {:.0} dB)",
            worst_at.0, worst_at.1
        ),
    );
    assert!(passed, "cut-set bound violated by {worst:.1} stderr units");
}

/// 11. Power constraint: conditional relay transmit power <= p_r
/// (relative tolerance 1e-10) on 1e3 realizations for all three schemes.
#[test]
fn criterion_11_power_constraint() {
    let cfg = NetworkConfig {
        trials: 1_000,
        ..reference()
    };
    let alloc = resolve_power_allocation(&cfg).unwrap();
    let mut worst = f64::NEG_INFINITY;
    for scheme in [Scheme::Mf, Scheme::Zf, Scheme::Lmmse] {
        for t in 0..cfg.trials {
            let mut stream = RandomStream::new(cfg.seed, t);
            let real = draw_realization(&cfg, &mut stream);
            let bf = build_beamformer_set(&real, scheme, &alloc).unwrap();
            for k in 0..real.relays {
                let p = conditional_transmit_power(
                    &bf.transforms[k],
                    &real.stack_first_hop(k),
                    alloc.source,
                    cfg.terminal_antennas,
                );
                worst = worst.max(p / alloc.relay - 1.0);
            }
        }
    }
    let passed = worst <= 1e-10;
    report(
        11,
        "power-constraint",
        passed,
        &format!("max relative excess {worst:.3e} over 1000 realizations x 3 schemes"),
    );
    assert!(passed, "transmit power exceeded the budget by {worst:.3e}");
}

/// 12. Coefficient reconstruction: the per-stream coefficients rebuild the
/// received signal to relative error < 1e-10 against a direct simulation
/// of r -> t -> y, on 100 draws per scheme.
#[test]
fn criterion_12_coefficient_reconstruction() {
    let cfg = NetworkConfig {
        trials: 100,
        ..reference()
    };
    let alloc = resolve_power_allocation(&cfg).unwrap();
    let mut worst: f64 = 0.0;
    for scheme in [Scheme::Mf, Scheme::Zf, Scheme::Lmmse] {
        for t in 0..cfg.trials {
            let mut stream = RandomStream::new(cfg.seed, t);
            let real = draw_realization(&cfg, &mut stream);
            let bf = build_beamformer_set(&real, scheme, &alloc).unwrap();
            worst = worst.max(coefficient_reconstruction_error(
                &real, &bf, &alloc, &mut stream,
            ));
        }
    }
    let passed = worst < 1e-10;
    report(
        12,
        "coefficient-reconstruction",
        passed,
        &format!("max relative error {worst:.3e} over 100 draws per scheme"),
    );
    assert!(passed, "reconstruction error {worst:.3e} >= 1e-10");
}
