//! Closed-form asymptotic constants and tradeoff curves for the large-relay
//! regime, and numerical extraction of the four power-bandwidth figures of
//! merit from any measured C(SNR) curve.

use serde::{Deserialize, Serialize};

use crate::config::{NetworkConfig, PathLossModel, Scheme};
use crate::error::{Error, Result};
use crate::random::RandomStream;
use crate::stats;

/// Operating regime for asymptotic predictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Low,
    High,
}

/// Gamma shape of the per-stream effective channel gains: `N` for the
/// matched filter (any regime) and L-MMSE at low SNR, `N - LM + 1` for zero
/// forcing (any regime) and L-MMSE at high SNR. `None` for the baselines or
/// when `N < LM`.
pub fn gamma_shape(scheme: Scheme, regime: Regime, cfg: &NetworkConfig) -> Option<usize> {
    let n = cfg.relay_antennas;
    let lm = cfg.streams();
    match (scheme, regime) {
        (Scheme::Mf, _) | (Scheme::Lmmse, Regime::Low) => Some(n),
        (Scheme::Zf, _) | (Scheme::Lmmse, Regime::High) => (n + 1).checked_sub(lm).filter(|&s| s >= 1),
        _ => None,
    }
}

/// `Gamma(s + 1/2) / Gamma(s)`, the mean of `sqrt(X)` for `X ~ Gamma(s)`.
pub fn gamma_half_ratio(shape: f64) -> f64 {
    (statrs::function::gamma::ln_gamma(shape + 0.5) - statrs::function::gamma::ln_gamma(shape))
        .exp()
}

/// The fading/path-loss expectation constants of the asymptotic SIR laws,
/// for independent `X, Y ~ Gamma(shape)` and the given path-loss model:
/// `theta1 = E[sqrt(E F X Y)]`, `theta2 = E[F X / (E Y)]`,
/// `theta3 = E[sqrt(F X)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaConstants {
    pub shape: usize,
    pub path_loss: PathLossModel,
    pub theta1: f64,
    /// Infinite at shape 1, where `E[1/Y]` diverges.
    pub theta2: f64,
    pub theta3: f64,
}

impl ThetaConstants {
    pub fn theta2_finite(&self) -> Result<f64> {
        if self.theta2.is_finite() {
            Ok(self.theta2)
        } else {
            Err(Error::Theta2Infinite { shape: self.shape })
        }
    }
}

/// Closed forms from the independence of the path-loss factors and the
/// gamma gains; uniform path-loss moments are exact.
pub fn theta_constants(shape: usize, path_loss: &PathLossModel) -> ThetaConstants {
    assert!(shape >= 1, "gamma shape must be >= 1");
    let s = shape as f64;
    let half = gamma_half_ratio(s);
    let theta1 = path_loss.mean_sqrt_e() * path_loss.mean_sqrt_f() * half * half;
    let theta2 = if shape >= 2 {
        path_loss.mean_f() * path_loss.mean_inv_e() * s / (s - 1.0)
    } else {
        f64::INFINITY
    };
    let theta3 = path_loss.mean_sqrt_f() * half;
    ThetaConstants {
        shape,
        path_loss: *path_loss,
        theta1,
        theta2,
        theta3,
    }
}

/// Monte Carlo estimate of one theta constant.
#[derive(Debug, Clone, Copy)]
pub struct ThetaEstimate {
    pub value: f64,
    pub stderr: f64,
}

/// Sample-based estimates of all three constants, for validating the
/// closed forms. `theta2` is skipped (NaN) at shape 1.
pub fn theta_monte_carlo(
    shape: usize,
    path_loss: &PathLossModel,
    samples: usize,
    stream: &mut RandomStream,
) -> Result<[ThetaEstimate; 3]> {
    let mut t1 = Vec::with_capacity(samples);
    let mut t2 = Vec::with_capacity(samples);
    let mut t3 = Vec::with_capacity(samples);
    for _ in 0..samples {
        let (e, f) = path_loss.sample(stream);
        let x = stream.gamma(shape as u32)?;
        let y = stream.gamma(shape as u32)?;
        t1.push((e * f * x * y).sqrt());
        if shape >= 2 {
            t2.push(f * x / (e * y));
        }
        t3.push((f * x).sqrt());
    }
    let (m1, s1) = stats::mean_stderr(&t1);
    let (m2, s2) = if shape >= 2 {
        stats::mean_stderr(&t2)
    } else {
        (f64::NAN, f64::NAN)
    };
    let (m3, s3) = stats::mean_stderr(&t3);
    Ok([
        ThetaEstimate { value: m1, stderr: s1 },
        ThetaEstimate { value: m2, stderr: s2 },
        ThetaEstimate { value: m3, stderr: s3 },
    ])
}

fn check_c_grid(c_grid: &[f64]) -> Result<()> {
    if c_grid.iter().any(|&c| !(c > 0.0)) {
        return Err(Error::InvalidConfig(
            "spectral-efficiency grid must be strictly positive".into(),
        ));
    }
    Ok(())
}

/// Low-SNR deterministic tradeoff of the relay beamforming schemes:
/// `Eb/N0(C) = sqrt(L^3 M^3 (2^{2C/(LM)} - 1) / (theta1^2 K)) / C`.
pub fn lowsnr_tradeoff_curve(
    c_grid: &[f64],
    relays: usize,
    pairs: usize,
    terminal_antennas: usize,
    theta1: f64,
) -> Result<Vec<f64>> {
    check_c_grid(c_grid)?;
    let l = pairs as f64;
    let m = terminal_antennas as f64;
    let k = relays as f64;
    let lm = l * m;
    Ok(c_grid
        .iter()
        .map(|&c| {
            let growth = (2f64.powf(2.0 * c / lm) - 1.0) * l.powi(3) * m.powi(3);
            (growth / (theta1 * theta1 * k)).sqrt() / c
        })
        .collect())
}

/// High-SNR deterministic tradeoff of the interference-cancelling schemes,
/// with optional duty cycle (`alpha = 1` is the continuous-signaling law):
/// `Eb/N0(C) = (2^x / x) * (sqrt(theta2) + sqrt(LM))^2 / (K theta3^2)`
/// with `x = 2C/(alpha LM)`.
pub fn highsnr_tradeoff_curve(
    c_grid: &[f64],
    relays: usize,
    pairs: usize,
    terminal_antennas: usize,
    thetas: &ThetaConstants,
    alpha: f64,
) -> Result<Vec<f64>> {
    check_c_grid(c_grid)?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidConfig("alpha must lie in (0, 1]".into()));
    }
    let theta2 = thetas.theta2_finite()?;
    let lm = (pairs * terminal_antennas) as f64;
    let k = relays as f64;
    let front = (theta2.sqrt() + lm.sqrt()).powi(2) / (k * thetas.theta3 * thetas.theta3);
    Ok(c_grid
        .iter()
        .map(|&c| {
            let x = 2.0 * c / (alpha * lm);
            2f64.powf(x) / x * front
        })
        .collect())
}

/// Power-bandwidth figures of merit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffFigures {
    /// Minimum energy per bit (linear).
    pub ebn0_min: f64,
    /// Wideband slope, b/s/Hz per 3.01 dB.
    pub s0: f64,
    /// High-SNR Eb/N0 improvement factor relative to unfaded AWGN (linear);
    /// infinite when the curve saturates.
    pub ebn0_imp: f64,
    /// High-SNR slope, b/s/Hz per 3.01 dB; 0 when saturated.
    pub s_inf: f64,
    /// Set when the top-decade slope fell below the saturation threshold.
    pub saturated: bool,
    /// The fitted top-decade slope before saturation snapping.
    pub high_slope_raw: f64,
}

/// Cut-set lower bound on Eb/N0 plus the best-case figures it implies.
#[derive(Debug, Clone)]
pub struct CutsetCurve {
    pub ebn0: Vec<f64>,
    pub figures: TradeoffFigures,
}

/// Cut-set bound `Eb/N0(C) >= ((2^{2C/LM} - 1)/(2C)) * LM/(K N E[E])`
/// and the Theorem-level best-case figures.
pub fn cutset_tradeoff_curve(
    c_grid: &[f64],
    relays: usize,
    pairs: usize,
    terminal_antennas: usize,
    relay_antennas: usize,
    mean_e: f64,
) -> Result<CutsetCurve> {
    check_c_grid(c_grid)?;
    let lm = (pairs * terminal_antennas) as f64;
    let kn = relays as f64 * relay_antennas as f64 * mean_e;
    let ebn0 = c_grid
        .iter()
        .map(|&c| (2f64.powf(2.0 * c / lm) - 1.0) / (2.0 * c) * lm / kn)
        .collect();
    let figures = TradeoffFigures {
        ebn0_min: std::f64::consts::LN_2 / kn,
        s0: lm,
        ebn0_imp: lm / (2.0 * kn),
        s_inf: lm / 2.0,
        saturated: false,
        high_slope_raw: lm / 2.0,
    };
    Ok(CutsetCurve { ebn0, figures })
}

/// Root of `x = 2 (1 - e^{-x})` by bisection to 1e-10: the stationarity
/// condition of the low-SNR curve. The energy-optimal spectral efficiency
/// is `C* = cstar_over_lm() * LM`.
pub fn cstar_over_lm() -> f64 {
    let f = |x: f64| x - 2.0 * (1.0 - (-x).exp());
    let mut lo = 1.0;
    let mut hi = 2.0;
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    x / (2.0 * std::f64::consts::LN_2)
}

/// The constant in `(Eb/N0)_min = sqrt(const * LM / (theta1^2 K))`,
/// approximately 2.97.
pub fn min_energy_constant() -> f64 {
    let x = cstar_over_lm() * 2.0 * std::f64::consts::LN_2;
    (x.exp() - 1.0) * 4.0 * std::f64::consts::LN_2.powi(2) / (x * x)
}

/// Minimum energy per bit of the low-SNR law.
pub fn min_energy_per_bit(relays: usize, pairs: usize, terminal_antennas: usize, theta1: f64) -> f64 {
    let lm = (pairs * terminal_antennas) as f64;
    (min_energy_constant() * lm / (theta1 * theta1 * relays as f64)).sqrt()
}

/// Deterministic asymptotic SIR prediction for comparison with Monte Carlo:
/// low regime `SNR^2 K theta1^2 / (L^3 M^3)`, high regime
/// `(2 K SNR / LM) theta3^2 / (sqrt(theta2) + sqrt(LM))^2`.
/// The constants must be built with the scheme's gamma shape.
pub fn predicted_sir(
    regime: Regime,
    relays: usize,
    pairs: usize,
    terminal_antennas: usize,
    snr: f64,
    thetas: &ThetaConstants,
) -> Result<f64> {
    let l = pairs as f64;
    let m = terminal_antennas as f64;
    let k = relays as f64;
    match regime {
        Regime::Low => Ok(snr * snr * k * thetas.theta1 * thetas.theta1 / (l.powi(3) * m.powi(3))),
        Regime::High => {
            let theta2 = thetas.theta2_finite()?;
            let lm = l * m;
            Ok(2.0 * k * snr / lm * thetas.theta3 * thetas.theta3
                / (theta2.sqrt() + lm.sqrt()).powi(2))
        }
    }
}

/// Threshold below which the fitted top-decade slope is reported as
/// saturation (`S_inf = 0`), in b/s/Hz per 3.01 dB.
pub const SATURATION_SLOPE: f64 = 0.05;

/// Extract the four figures of merit from a measured `C(SNR)` curve.
///
/// `curve` holds `(snr_linear, c_bits)` points sorted in SNR and must span
/// at least two decades. `(Eb/N0)_min` comes from a grid scan refined by a
/// local quadratic fit; `S0` from nonuniform central differences (in nats)
/// at the smallest SNRs; `S_inf` and `(Eb/N0)_imp` from a least-squares
/// line over the top decade.
pub fn extract_figures(curve: &[(f64, f64)]) -> Result<TradeoffFigures> {
    if curve.len() < 4 {
        return Err(Error::InsufficientCurve("need at least 4 points".into()));
    }
    for w in curve.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::InsufficientCurve("SNR grid must be ascending".into()));
        }
    }
    let snr_min = curve[0].0;
    let snr_max = curve[curve.len() - 1].0;
    if !(snr_min > 0.0) || snr_max / snr_min < 100.0 {
        return Err(Error::InsufficientCurve(
            "curve must span at least two SNR decades".into(),
        ));
    }

    // (Eb/N0)_min: grid scan, then a parabola through the bracketing points
    // in (ln SNR, Eb/N0) coordinates.
    let ratios: Vec<f64> = curve.iter().map(|&(s, c)| s / c).collect();
    let mut arg = 0;
    for (i, &r) in ratios.iter().enumerate() {
        if r < ratios[arg] {
            arg = i;
        }
    }
    let mut ebn0_min = ratios[arg];
    if arg > 0 && arg + 1 < curve.len() {
        let x: Vec<f64> = (arg - 1..=arg + 1).map(|i| curve[i].0.ln()).collect();
        let y: Vec<f64> = (arg - 1..=arg + 1).map(|i| ratios[i]).collect();
        if let Some(v) = parabola_vertex_value(&x, &y) {
            if v > 0.0 && v <= ebn0_min {
                ebn0_min = v;
            }
        }
    }

    // S0 from the three smallest grid points, C in nats.
    let s0 = wideband_slope(
        [curve[0].0, curve[1].0, curve[2].0],
        [
            curve[0].1 * std::f64::consts::LN_2,
            curve[1].1 * std::f64::consts::LN_2,
            curve[2].1 * std::f64::consts::LN_2,
        ],
    );

    // S_inf from the top decade of the grid.
    let cut = snr_max / 10.0;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &(s, c) in curve {
        if s >= cut {
            xs.push(s.log2());
            ys.push(c);
        }
    }
    if xs.len() < 2 {
        let n = curve.len();
        xs = curve[n - 2..].iter().map(|p| p.0.log2()).collect();
        ys = curve[n - 2..].iter().map(|p| p.1).collect();
    }
    let (slope, intercept) = stats::linear_fit(&xs, &ys);
    let saturated = slope < SATURATION_SLOPE;
    let (s_inf, ebn0_imp) = if saturated {
        (0.0, f64::INFINITY)
    } else {
        (slope, 2f64.powf(-intercept / slope))
    };

    Ok(TradeoffFigures {
        ebn0_min,
        s0,
        ebn0_imp,
        s_inf,
        saturated,
        high_slope_raw: slope,
    })
}

/// Vertex value of the parabola through three points; None when the points
/// are collinear or concave.
fn parabola_vertex_value(x: &[f64], y: &[f64]) -> Option<f64> {
    let (x0, x1, x2) = (x[0], x[1], x[2]);
    let (y0, y1, y2) = (y[0], y[1], y[2]);
    let d0 = (x0 - x1) * (x0 - x2);
    let d1 = (x1 - x0) * (x1 - x2);
    let d2 = (x2 - x0) * (x2 - x1);
    let a = y0 / d0 + y1 / d1 + y2 / d2;
    if !(a > 0.0) {
        return None;
    }
    let b = -(y0 * (x1 + x2) / d0 + y1 * (x0 + x2) / d1 + y2 * (x0 + x1) / d2);
    let c = y0 * x1 * x2 / d0 + y1 * x0 * x2 / d1 + y2 * x0 * x1 / d2;
    let xv = -b / (2.0 * a);
    if xv < x0 || xv > x2 {
        return None;
    }
    Some(c - b * b / (4.0 * a))
}

/// `S0 = 2 Cdot^2 / (-Cddot)` from nonuniform central differences at the
/// middle abscissa; `c` in nats.
fn wideband_slope(snr: [f64; 3], c_nats: [f64; 3]) -> f64 {
    let h_minus = snr[1] - snr[0];
    let h_plus = snr[2] - snr[1];
    let denom = h_plus * h_minus * (h_plus + h_minus);
    let first = (h_minus * h_minus * c_nats[2]
        + (h_plus * h_plus - h_minus * h_minus) * c_nats[1]
        - h_plus * h_plus * c_nats[0])
        / denom;
    let second =
        2.0 * (h_minus * c_nats[2] - (h_plus + h_minus) * c_nats[1] + h_plus * c_nats[0]) / denom;
    if second >= 0.0 {
        return f64::INFINITY;
    }
    2.0 * first * first / (-second)
}

/// Extract figures from a closed-form curve `c(snr)` (bits), building a
/// geometric grid of ratio 1.1 and refining the wideband slope by step
/// halving until it changes by less than 0.5%.
pub fn extract_figures_fn(
    c_of_snr: impl Fn(f64) -> f64,
    snr_lo: f64,
    snr_hi: f64,
) -> Result<TradeoffFigures> {
    if !(snr_lo > 0.0 && snr_hi > snr_lo) {
        return Err(Error::InsufficientCurve("bad SNR range".into()));
    }
    let mut grid = Vec::new();
    let mut s = snr_lo;
    while s < snr_hi * 1.0000001 {
        grid.push((s, c_of_snr(s)));
        s *= 1.1;
    }
    let mut figures = extract_figures(&grid)?;

    // Step-halving refinement of S0 at the smallest SNR.
    let ln2 = std::f64::consts::LN_2;
    let mut ratio = 1.1f64;
    let mut prev = figures.s0;
    for _ in 0..24 {
        ratio = ratio.sqrt();
        let pts = [snr_lo, snr_lo * ratio, snr_lo * ratio * ratio];
        let s0 = wideband_slope(
            pts,
            [
                c_of_snr(pts[0]) * ln2,
                c_of_snr(pts[1]) * ln2,
                c_of_snr(pts[2]) * ln2,
            ],
        );
        let change = ((s0 - prev) / prev).abs();
        prev = s0;
        if change < 0.005 {
            break;
        }
    }
    figures.s0 = prev;
    Ok(figures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_loss() -> PathLossModel {
        PathLossModel::Constant { e_db: 0.0, f_db: 0.0 }
    }

    #[test]
    fn theta_closed_forms_match_gamma_oracle() {
        // Gamma-function oracle: E[sqrt(X)] = Gamma(s + 1/2)/Gamma(s).
        let t = theta_constants(2, &unit_loss());
        let r = gamma_half_ratio(2.0);
        assert!((r - 1.329_340_388_179_137).abs() < 1e-12);
        assert!((t.theta1 - r * r).abs() < 1e-12);
        assert!((t.theta1 - 1.767_146).abs() < 1e-5);

        let t = theta_constants(3, &unit_loss());
        // E[X] = 3, E[1/Y] = 1/2.
        assert!((t.theta2 - 1.5).abs() < 1e-12);
        // theta3 = E[sqrt(F X)] = Gamma(3.5)/Gamma(3) = 1.875 sqrt(pi) / 2.
        assert!((t.theta3 - gamma_half_ratio(3.0)).abs() < 1e-12);
        assert!((t.theta3 - 1.875 * PI.sqrt() / 2.0).abs() < 1e-12);
        assert!((t.theta3 - 1.661_675_5).abs() < 1e-6);

        let t = theta_constants(1, &unit_loss());
        assert!((t.theta1 - PI / 4.0).abs() < 1e-12);
        assert!((t.theta3 - PI.sqrt() / 2.0).abs() < 1e-12);
        assert!(t.theta2.is_infinite());
        assert!(t.theta2_finite().is_err());
    }

    #[test]
    fn theta_closed_forms_match_monte_carlo() {
        let model = PathLossModel::Uniform {
            e_lo: 0.5,
            e_hi: 2.0,
            f_lo: 0.25,
            f_hi: 1.5,
        };
        let t = theta_constants(3, &model);
        let mut stream = RandomStream::new(2024, 0);
        let est = theta_monte_carlo(3, &model, 200_000, &mut stream).unwrap();
        for (closed, e) in [(t.theta1, est[0]), (t.theta2, est[1]), (t.theta3, est[2])] {
            assert!(
                (closed - e.value).abs() < 3.0 * e.stderr,
                "closed {closed} vs MC {} +- {}",
                e.value,
                e.stderr
            );
        }
    }

    #[test]
    fn cstar_and_min_energy_constant() {
        let c = cstar_over_lm();
        assert!((c - 1.1495).abs() < 1e-3, "C*/LM = {c}");
        let k = min_energy_constant();
        assert!((k - 2.97).abs() < 0.01, "constant = {k}");
    }

    #[test]
    fn lowsnr_curve_minimum_location_and_value() {
        for lm in [1usize, 2, 4] {
            let (pairs, m) = (lm, 1usize);
            let k = 10usize;
            let theta1 = theta_constants(2, &unit_loss()).theta1;
            let grid: Vec<f64> = (1..4000).map(|i| i as f64 * 0.002 * lm as f64).collect();
            let curve = lowsnr_tradeoff_curve(&grid, k, pairs, m, theta1).unwrap();
            let mut arg = 0;
            for (i, &v) in curve.iter().enumerate() {
                if v < curve[arg] {
                    arg = i;
                }
            }
            let cstar = grid[arg] / lm as f64;
            assert!((cstar - 1.1495).abs() < 0.01 * 1.0, "C*/LM = {cstar}");
            let expect = min_energy_per_bit(k, pairs, m, theta1);
            assert!(
                ((curve[arg] - expect) / expect).abs() < 0.003,
                "min {} vs {}",
                curve[arg],
                expect
            );
        }
    }

    #[test]
    fn lowsnr_curve_blows_up_toward_zero_rate() {
        let theta1 = PI / 4.0;
        let grid = [0.001, 0.01, 0.1, 1.0];
        let curve = lowsnr_tradeoff_curve(&grid, 10, 2, 1, theta1).unwrap();
        assert!(curve[0] > curve[1] && curve[1] > curve[2]);
        assert!(lowsnr_tradeoff_curve(&[0.0], 10, 2, 1, theta1).is_err());
    }

    #[test]
    fn highsnr_curve_alpha_one_is_continuous_law() {
        let t = theta_constants(3, &unit_loss());
        let grid = [0.5, 1.0, 2.0, 4.0, 8.0];
        let a1 = highsnr_tradeoff_curve(&grid, 10, 2, 1, &t, 1.0).unwrap();
        // Direct evaluation of the continuous-signaling form.
        let lm = 2.0f64;
        for (i, &c) in grid.iter().enumerate() {
            let expect = 2f64.powf(2.0 * c / lm) / (2.0 * c) * lm
                * (t.theta2.sqrt() + lm.sqrt()).powi(2)
                / (10.0 * t.theta3 * t.theta3);
            assert!(((a1[i] - expect) / expect).abs() < 1e-12);
        }
    }

    #[test]
    fn highsnr_slope_and_k_shift() {
        let t = theta_constants(3, &unit_loss());
        for alpha in [1.0, 0.5] {
            // Slope of C vs 10log10(Eb/N0) at large C approaches alpha*LM/2.
            let c1 = 200.0 * alpha;
            let c2 = c1 + alpha;
            let e = highsnr_tradeoff_curve(&[c1, c2], 10, 2, 1, &t, alpha).unwrap();
            let slope = (c2 - c1) / (stats::db_from_linear(e[1]) - stats::db_from_linear(e[0]))
                * 10.0 * 2f64.log10();
            let expect = alpha * 2.0 / 2.0;
            assert!(
                ((slope - expect) / expect).abs() < 0.01,
                "alpha {alpha}: slope {slope}"
            );
        }

        let grid = [4.0];
        let k10 = highsnr_tradeoff_curve(&grid, 10, 2, 1, &t, 1.0).unwrap();
        let k20 = highsnr_tradeoff_curve(&grid, 20, 2, 1, &t, 1.0).unwrap();
        let shift = stats::db_from_linear(k10[0]) - stats::db_from_linear(k20[0]);
        assert!((shift - 3.0103).abs() < 1e-6, "shift {shift}");
    }

    #[test]
    fn highsnr_requires_finite_theta2() {
        let t = theta_constants(1, &unit_loss());
        assert!(highsnr_tradeoff_curve(&[1.0], 10, 2, 1, &t, 1.0).is_err());
    }

    #[test]
    fn cutset_curve_figures_and_low_rate_limit() {
        let mean_e = 1.0;
        let cs = cutset_tradeoff_curve(&[1e-6, 1.0, 10.0], 10, 2, 1, 2, mean_e).unwrap();
        let kn = 20.0;
        assert!((cs.figures.s0 - 2.0).abs() < 1e-12);
        assert!((cs.figures.s_inf - 1.0).abs() < 1e-12);
        assert!((cs.figures.ebn0_min - std::f64::consts::LN_2 / kn).abs() < 1e-12);
        assert!((cs.figures.ebn0_imp - 2.0 / (2.0 * kn)).abs() < 1e-12);
        // C -> 0 limit of the bound equals the theorem minimum.
        assert!(((cs.ebn0[0] - cs.figures.ebn0_min) / cs.figures.ebn0_min).abs() < 1e-5);
    }

    #[test]
    fn mf_curve_never_above_zf_curve_at_low_snr() {
        // Shape N for the matched filter vs N - LM + 1 for zero forcing:
        // larger theta1 means lower Eb/N0 at every rate.
        let grid: Vec<f64> = (1..100).map(|i| i as f64 * 0.1).collect();
        let mf = lowsnr_tradeoff_curve(&grid, 10, 2, 1, theta_constants(2, &unit_loss()).theta1)
            .unwrap();
        let zf = lowsnr_tradeoff_curve(&grid, 10, 2, 1, theta_constants(1, &unit_loss()).theta1)
            .unwrap();
        for i in 0..grid.len() {
            assert!(mf[i] <= zf[i]);
        }
    }

    #[test]
    fn cutset_below_every_analytic_curve() {
        // The wideband law is compared on its own regime (up to ~2x the
        // energy-optimal rate); the high-SNR law holds at every rate.
        for (pairs, m, n) in [(2usize, 1usize, 4usize), (1, 2, 4), (2, 2, 6)] {
            let lm = pairs * m;
            let k = 12;
            let zf_shape = n - lm + 1;
            let wideband: Vec<f64> = (1..60).map(|i| i as f64 * 2.0 * lm as f64 / 60.0).collect();
            let full: Vec<f64> = (1..60).map(|i| i as f64 * 0.2 * lm as f64).collect();
            let cs_wide = cutset_tradeoff_curve(&wideband, k, pairs, m, n, 1.0).unwrap();
            let cs_full = cutset_tradeoff_curve(&full, k, pairs, m, n, 1.0).unwrap();
            let low = lowsnr_tradeoff_curve(
                &wideband,
                k,
                pairs,
                m,
                theta_constants(n, &unit_loss()).theta1,
            )
            .unwrap();
            let high = highsnr_tradeoff_curve(
                &full,
                k,
                pairs,
                m,
                &theta_constants(zf_shape, &unit_loss()),
                1.0,
            )
            .unwrap();
            for i in 0..wideband.len() {
                assert!(cs_wide.ebn0[i] <= low[i] * (1.0 + 1e-12));
            }
            for i in 0..full.len() {
                assert!(cs_full.ebn0[i] <= high[i] * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn extract_figures_awgn_oracle() {
        let figures = extract_figures_fn(|snr| (1.0 + snr).log2(), 1e-4, 1e4).unwrap();
        assert!((figures.s0 - 2.0).abs() / 2.0 < 0.02, "S0 = {}", figures.s0);
        assert!(
            (figures.ebn0_min - std::f64::consts::LN_2).abs() / std::f64::consts::LN_2 < 0.02,
            "min = {}",
            figures.ebn0_min
        );
        assert!((figures.s_inf - 1.0).abs() < 0.02, "S_inf = {}", figures.s_inf);
        assert!((figures.ebn0_imp - 1.0).abs() < 0.05, "imp = {}", figures.ebn0_imp);
    }

    #[test]
    fn extract_figures_affine_curve_is_exact() {
        let (a, b) = (1.8, -0.7);
        let grid: Vec<(f64, f64)> = (0..60)
            .map(|i| {
                let snr = 10f64.powf(i as f64 * 0.1);
                (snr, a * snr.log2() + b)
            })
            .collect();
        let f = extract_figures(&grid).unwrap();
        assert!((f.s_inf - a).abs() < 1e-9);
        assert!((f.ebn0_imp - 2f64.powf(-b / a)).abs() < 1e-9);
    }

    #[test]
    fn extract_figures_flags_saturation() {
        let grid: Vec<(f64, f64)> = (0..60)
            .map(|i| (10f64.powf(i as f64 * 0.1), 3.0))
            .collect();
        let f = extract_figures(&grid).unwrap();
        assert!(f.saturated);
        assert_eq!(f.s_inf, 0.0);
        assert!(f.ebn0_imp.is_infinite());
    }

    #[test]
    fn extract_figures_self_consistent_with_highsnr_law() {
        let t = theta_constants(3, &unit_loss());
        let (k, pairs, m) = (10usize, 2usize, 1usize);
        let lm = 2.0;
        // Invert the closed form numerically to get C(SNR) on a grid:
        // Eb/N0 = snr / C with Eb/N0(C) known, so solve per point.
        let curve: Vec<(f64, f64)> = (0..90)
            .map(|i| {
                let snr = 10f64.powf(i as f64 * 0.1 - 1.0);
                // Bisect C such that C * ebn0(C) = snr.
                let mut lo = 1e-9;
                let mut hi = 60.0;
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    let e = highsnr_tradeoff_curve(&[mid], k, pairs, m, &t, 1.0).unwrap()[0];
                    if mid * e < snr {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                (snr, 0.5 * (lo + hi))
            })
            .collect();
        let f = extract_figures(&curve).unwrap();
        assert!((f.s_inf - lm / 2.0).abs() / (lm / 2.0) < 0.01, "S_inf {}", f.s_inf);
        let expect_imp =
            lm / (2.0 * k as f64 * t.theta3 * t.theta3) * (t.theta2.sqrt() + lm.sqrt()).powi(2);
        assert!(
            ((f.ebn0_imp - expect_imp) / expect_imp).abs() < 0.01,
            "imp {} vs {}",
            f.ebn0_imp,
            expect_imp
        );
    }

    #[test]
    fn extract_figures_rejects_bad_input() {
        assert!(extract_figures(&[(1.0, 1.0), (2.0, 1.5)]).is_err());
        let unsorted = [(1.0, 1.0), (0.5, 0.7), (2.0, 1.5), (3.0, 1.8)];
        assert!(extract_figures(&unsorted).is_err());
        let narrow: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, i as f64)).collect();
        assert!(extract_figures(&narrow).is_err());
    }

    #[test]
    fn predicted_sir_scalings() {
        let t1 = theta_constants(2, &unit_loss());
        let a = predicted_sir(Regime::Low, 10, 2, 1, 0.01, &t1).unwrap();
        let b = predicted_sir(Regime::Low, 10, 2, 1, 0.02, &t1).unwrap();
        assert!(((b / a) - 4.0).abs() < 1e-12, "quadratic in SNR");

        let t3 = theta_constants(3, &unit_loss());
        let a = predicted_sir(Regime::High, 10, 2, 1, 100.0, &t3).unwrap();
        let b = predicted_sir(Regime::High, 20, 2, 1, 100.0, &t3).unwrap();
        let c = predicted_sir(Regime::High, 10, 2, 1, 200.0, &t3).unwrap();
        assert!(((b / a) - 2.0).abs() < 1e-12, "linear in K");
        assert!(((c / a) - 2.0).abs() < 1e-12, "linear in SNR");

        let t_inf = theta_constants(1, &unit_loss());
        assert!(predicted_sir(Regime::High, 10, 2, 1, 100.0, &t_inf).is_err());
    }

    #[test]
    fn gamma_shape_table() {
        let cfg = NetworkConfig {
            relay_antennas: 4,
            ..NetworkConfig::default()
        };
        assert_eq!(gamma_shape(Scheme::Mf, Regime::Low, &cfg), Some(4));
        assert_eq!(gamma_shape(Scheme::Zf, Regime::High, &cfg), Some(3));
        assert_eq!(gamma_shape(Scheme::Lmmse, Regime::Low, &cfg), Some(4));
        assert_eq!(gamma_shape(Scheme::Lmmse, Regime::High, &cfg), Some(3));
        assert_eq!(gamma_shape(Scheme::Direct, Regime::Low, &cfg), None);
        let tight = NetworkConfig {
            relay_antennas: 2,
            ..NetworkConfig::default()
        };
        assert_eq!(gamma_shape(Scheme::Zf, Regime::High, &tight), Some(1));
    }
}
