//! Statistical helpers: reproducible summation, quantiles, one-sample
//! Kolmogorov-Smirnov tests, and least-squares line fits.

/// Pairwise summation with a fixed reduction tree, so the result does not
/// depend on how the inputs were produced across threads.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

/// Sample mean and its standard error.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = mean(xs);
    if xs.len() < 2 {
        return (m, 0.0);
    }
    let sq: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
    let var = pairwise_sum(&sq) / (n - 1.0);
    (m, (var / n).sqrt())
}

/// Linear-interpolated quantile of an ascending-sorted slice, `q` in [0, 1].
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

pub fn median_sorted(sorted: &[f64]) -> f64 {
    quantile_sorted(sorted, 0.5)
}

pub fn sort_ascending(xs: &mut [f64]) {
    xs.sort_by(|a, b| a.partial_cmp(b).expect("NaN in sample"));
}

/// Outcome of a one-sample Kolmogorov-Smirnov test.
#[derive(Debug, Clone, Copy)]
pub struct KsOutcome {
    pub statistic: f64,
    pub critical: f64,
    pub n: usize,
    pub passed: bool,
}

/// One-sample KS test of `samples` against the CDF `cdf`, using the
/// asymptotic critical value `sqrt(ln(2/alpha)/2)/sqrt(n)`.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &mut Vec<f64>, cdf: F, significance: f64) -> KsOutcome {
    sort_ascending(samples);
    let n = samples.len();
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / nf).abs());
        d = d.max(((i + 1) as f64 / nf - f).abs());
    }
    let critical = ((2.0 / significance).ln() / 2.0).sqrt() / nf.sqrt();
    KsOutcome {
        statistic: d,
        critical,
        n,
        passed: d < critical,
    }
}

/// Least-squares fit `y = slope * x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2);
    let n = xs.len() as f64;
    let mx = mean(xs);
    let my = mean(ys);
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    assert!(sxx > 0.0, "degenerate abscissa");
    let _ = n;
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

pub fn db_from_linear(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn linear_from_db(x_db: f64) -> f64 {
    10f64.powf(x_db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-9);
    }

    #[test]
    fn quantiles() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&xs, 0.0), 1.0);
        assert_eq!(quantile_sorted(&xs, 1.0), 4.0);
        assert_eq!(median_sorted(&xs), 2.5);
    }

    #[test]
    fn ks_accepts_uniform_rejects_shifted() {
        let mut s = crate::random::RandomStream::new(1234, 0);
        let mut xs: Vec<f64> = (0..10_000).map(|_| s.uniform(0.0, 1.0)).collect();
        let out = ks_test(&mut xs, |x| x.clamp(0.0, 1.0), 0.01);
        assert!(out.passed, "D={} crit={}", out.statistic, out.critical);

        let mut ys: Vec<f64> = xs.iter().map(|x| x * 0.9).collect();
        let out = ks_test(&mut ys, |x| x.clamp(0.0, 1.0), 0.01);
        assert!(!out.passed);
    }

    #[test]
    fn fit_recovers_line() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.5 * x - 2.0).collect();
        let (a, b) = linear_fit(&xs, &ys);
        assert!((a - 3.5).abs() < 1e-12);
        assert!((b + 2.0).abs() < 1e-12);
    }

    #[test]
    fn db_round_trip() {
        let x = 123.456;
        assert!((linear_from_db(db_from_linear(x)) - x).abs() < 1e-9);
    }
}
