//! Per-relay linear beamforming: input/output matrices, estimate
//! normalization, and the composite relay transform `t_k = A_k r_k`.
//!
//! Inversions go through factorizations (QR for pseudo-inverses, Cholesky
//! for ridge systems); a condition-number guard rejects degenerate draws so
//! callers can redraw.

use nalgebra::{DMatrix, RowDVector};
use num_complex::Complex;

use crate::channel::ChannelRealization;
use crate::config::{PowerAllocation, Scheme};
use crate::error::{Error, Result};
use crate::random::C64;

/// Gram-matrix condition number above which a draw is rejected.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Noise power `N0*B` in internal units.
const NOISE_POWER: f64 = 1.0;

/// Input/output beamformers, normalization scalars, and composite
/// transforms for every relay, built from one channel realization.
#[derive(Debug, Clone)]
pub struct BeamformerSet {
    /// `input[k]` is LM x N; row `j` extracts the estimate of stream `j`.
    pub input: Vec<DMatrix<C64>>,
    /// `output[k]` is N x LM; column `j` carries stream `j` to its destination.
    pub output: Vec<DMatrix<C64>>,
    /// `norms[k][j]` is the conditional RMS of the raw estimate of stream `j`.
    pub norms: Vec<Vec<f64>>,
    /// `transforms[k]` is the N x N relay transform A_k.
    pub transforms: Vec<DMatrix<C64>>,
}

/// Left pseudo-inverse of a tall full-rank matrix via thin QR, guarded by
/// the Gram condition number (squared singular-value ratio).
fn guarded_pinv(a: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let sv = a.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let cond_gram = if smin > 0.0 {
        (smax / smin) * (smax / smin)
    } else {
        f64::INFINITY
    };
    if !(cond_gram <= CONDITION_LIMIT) {
        return Err(Error::DegenerateDraw {
            cond: cond_gram,
            limit: CONDITION_LIMIT,
        });
    }
    let qr = a.clone().qr();
    let qh = qr.q().adjoint();
    qr.r()
        .solve_upper_triangular(&qh)
        .ok_or(Error::DegenerateDraw {
            cond: cond_gram,
            limit: CONDITION_LIMIT,
        })
}

/// Solve `(ridge*I + B^H B) X = B^H` through Cholesky; `B` tall.
fn ridge_solve(b: &DMatrix<C64>, ridge: f64) -> Result<DMatrix<C64>> {
    let cols = b.ncols();
    let mut gram = b.adjoint() * b;
    for j in 0..cols {
        gram[(j, j)] += Complex::new(ridge, 0.0);
    }
    let chol = gram.cholesky().ok_or(Error::DegenerateDraw {
        cond: f64::INFINITY,
        limit: CONDITION_LIMIT,
    })?;
    Ok(chol.solve(&b.adjoint()))
}

/// Input beamformer U_k (LM x N) for the stacked first-hop matrix
/// `h_stack` (N x LM): matched filter `H^H`, zero forcing
/// `(H^H H)^{-1} H^H`, or L-MMSE `((M N0 B / p_s) I + H^H H)^{-1} H^H`.
pub fn build_input_beamformer(
    scheme: Scheme,
    h_stack: &DMatrix<C64>,
    source_power: f64,
    terminal_antennas: usize,
) -> Result<DMatrix<C64>> {
    match scheme {
        Scheme::Mf => Ok(h_stack.adjoint()),
        Scheme::Zf => guarded_pinv(h_stack),
        Scheme::Lmmse => {
            if !(source_power > 0.0) {
                return Err(Error::InvalidConfig("L-MMSE requires p_s > 0".into()));
            }
            ridge_solve(h_stack, terminal_antennas as f64 * NOISE_POWER / source_power)
        }
        other => Err(Error::InvalidConfig(format!(
            "no input beamformer for scheme {other}"
        ))),
    }
}

/// Output beamformer V_k (N x LM) for the stacked second-hop matrix
/// `g_stack` (LM x N): matched filter `G^H`, zero forcing
/// `G^H (G G^H)^{-1}`, or L-MMSE `G^H ((N N0 B / p_r) I + G G^H)^{-1}`.
pub fn build_output_beamformer(
    scheme: Scheme,
    g_stack: &DMatrix<C64>,
    relay_power: f64,
    relay_antennas: usize,
) -> Result<DMatrix<C64>> {
    match scheme {
        Scheme::Mf => Ok(g_stack.adjoint()),
        // G^H (G G^H)^{-1} is the adjoint of the left pseudo-inverse of G^H.
        Scheme::Zf => Ok(guarded_pinv(&g_stack.adjoint())?.adjoint()),
        Scheme::Lmmse => {
            if !(relay_power > 0.0) {
                return Err(Error::InvalidConfig("L-MMSE requires p_r > 0".into()));
            }
            let ridge = relay_antennas as f64 * NOISE_POWER / relay_power;
            Ok(ridge_solve(&g_stack.adjoint(), ridge)?.adjoint())
        }
        other => Err(Error::InvalidConfig(format!(
            "no output beamformer for scheme {other}"
        ))),
    }
}

/// Conditional RMS of the raw estimate `u * r_k`, used to normalize each
/// estimate to unit average energy given the channels:
/// `c = sqrt((p_s/M) * ||u H_k||^2 + ||u||^2 * N0 B)`.
///
/// Path-loss scaling is already inside the stacked `h_stack` columns.
pub fn normalization_scalar(
    u: &RowDVector<C64>,
    h_stack: &DMatrix<C64>,
    source_power: f64,
    terminal_antennas: usize,
) -> Result<f64> {
    if !(source_power > 0.0) {
        return Err(Error::InvalidConfig("p_s must be > 0".into()));
    }
    let u_norm_sq = u.norm_squared();
    if u_norm_sq == 0.0 {
        return Err(Error::InvalidConfig("zero beamforming row".into()));
    }
    let through = (u * h_stack).norm_squared();
    Ok((source_power / terminal_antennas as f64 * through + u_norm_sq * NOISE_POWER).sqrt())
}

/// Composite relay transform
/// `A_k = (sqrt(p_r)/(LM)) * sum_j (v_j/||v_j||) (u_j/c_j)`,
/// so that `t_k = A_k r_k` transmits every normalized stream estimate
/// through its output beam within the relay power budget.
pub fn compose_relay_transform(
    input: &DMatrix<C64>,
    output: &DMatrix<C64>,
    norms: &[f64],
    relay_power: f64,
    pairs: usize,
    terminal_antennas: usize,
) -> Result<DMatrix<C64>> {
    let lm = pairs * terminal_antennas;
    if input.nrows() != lm || output.ncols() != lm || norms.len() != lm {
        return Err(Error::InvalidConfig("beamformer dimensions disagree".into()));
    }
    let mut scale = DMatrix::<C64>::zeros(lm, lm);
    for j in 0..lm {
        let v_norm = output.column(j).norm();
        if v_norm == 0.0 {
            return Err(Error::InvalidConfig("zero output beam column".into()));
        }
        if !(norms[j] > 0.0) {
            return Err(Error::InvalidConfig("normalization scalar must be > 0".into()));
        }
        scale[(j, j)] = Complex::new(1.0 / (v_norm * norms[j]), 0.0);
    }
    let gain = Complex::new(relay_power.sqrt() / lm as f64, 0.0);
    Ok(output * scale * input * gain)
}

/// Conditional relay transmit power `E[||t_k||^2 | channels]` for transform
/// `a`, equal to `(p_s/M) ||A H_k||_F^2 + N0 B ||A||_F^2`.
pub fn conditional_transmit_power(
    a: &DMatrix<C64>,
    h_stack: &DMatrix<C64>,
    source_power: f64,
    terminal_antennas: usize,
) -> f64 {
    source_power / terminal_antennas as f64 * (a * h_stack).norm_squared()
        + NOISE_POWER * a.norm_squared()
}

/// Build beamformers for every relay of a realization.
pub fn build_beamformer_set(
    real: &ChannelRealization,
    scheme: Scheme,
    alloc: &PowerAllocation,
) -> Result<BeamformerSet> {
    let lm = real.streams();
    let mut set = BeamformerSet {
        input: Vec::with_capacity(real.relays),
        output: Vec::with_capacity(real.relays),
        norms: Vec::with_capacity(real.relays),
        transforms: Vec::with_capacity(real.relays),
    };
    for k in 0..real.relays {
        let h = real.stack_first_hop(k);
        let g = real.stack_second_hop(k);
        let u = build_input_beamformer(scheme, &h, alloc.source, real.terminal_antennas)?;
        let v = build_output_beamformer(scheme, &g, alloc.relay, real.relay_antennas)?;
        let mut c = Vec::with_capacity(lm);
        for j in 0..lm {
            let row: RowDVector<C64> = u.row(j).into_owned();
            c.push(normalization_scalar(
                &row,
                &h,
                alloc.source,
                real.terminal_antennas,
            )?);
        }
        let a = compose_relay_transform(&u, &v, &c, alloc.relay, real.pairs, real.terminal_antennas)?;
        set.input.push(u);
        set.output.push(v);
        set.norms.push(c);
        set.transforms.push(a);
    }
    Ok(set)
}

/// Per-stream effective first-hop power gains `E * Y` at one relay: the
/// inverse diagonal of the Gram inverse for the pseudo-inverse schemes
/// (`1/[(H^H H)^{-1}]_jj`), or the stacked column norms for the matched
/// filter. Used by the bursty duty-cycle condition.
pub fn first_hop_effective_gains(scheme: Scheme, h_stack: &DMatrix<C64>) -> Result<Vec<f64>> {
    match scheme {
        Scheme::Mf => Ok((0..h_stack.ncols())
            .map(|j| h_stack.column(j).norm_squared())
            .collect()),
        Scheme::Zf | Scheme::Lmmse => {
            let pinv = guarded_pinv(h_stack)?;
            Ok((0..pinv.nrows())
                .map(|j| 1.0 / pinv.row(j).norm_squared())
                .collect())
        }
        other => Err(Error::InvalidConfig(format!(
            "no first-hop gains for scheme {other}"
        ))),
    }
}
