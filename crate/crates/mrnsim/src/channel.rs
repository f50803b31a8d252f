//! Two-hop fading channel realizations and the direct-transmission
//! interference channel.
//!
//! Blocks are stored per (relay, pair); stacking across pairs is an
//! operation because the matched filter needs per-column access while the
//! pseudo-inverse schemes need the stacked matrices.

use std::io::{BufRead, Write};

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::random::{RandomStream, C64};

/// One draw of all fading matrices and path-loss factors.
///
/// Stream `(l, m)` maps to flat index `l*M + m` everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub relays: usize,
    pub pairs: usize,
    pub terminal_antennas: usize,
    pub relay_antennas: usize,
    /// First hop: `first_hop[k][l]` is N x M.
    pub first_hop: Vec<Vec<DMatrix<C64>>>,
    /// Second hop: `second_hop[k][l]` is M x N.
    pub second_hop: Vec<Vec<DMatrix<C64>>>,
    /// First-hop path-loss factors E, strictly positive.
    pub first_loss: Vec<Vec<f64>>,
    /// Second-hop path-loss factors F, strictly positive.
    pub second_loss: Vec<Vec<f64>>,
}

impl ChannelRealization {
    pub fn streams(&self) -> usize {
        self.pairs * self.terminal_antennas
    }

    /// Stacked first-hop matrix for relay `k`: N x LM, column block `l`
    /// scaled by `sqrt(E[k][l])`. Full column rank w.p. 1 when `N >= LM`.
    pub fn stack_first_hop(&self, k: usize) -> DMatrix<C64> {
        let (n, m) = (self.relay_antennas, self.terminal_antennas);
        let mut out = DMatrix::zeros(n, self.streams());
        for l in 0..self.pairs {
            let scale = self.first_loss[k][l].sqrt();
            for c in 0..m {
                for r in 0..n {
                    out[(r, l * m + c)] = self.first_hop[k][l][(r, c)] * scale;
                }
            }
        }
        out
    }

    /// Stacked second-hop matrix for relay `k`: LM x N, row block `l`
    /// scaled by `sqrt(F[k][l])`.
    pub fn stack_second_hop(&self, k: usize) -> DMatrix<C64> {
        let (n, m) = (self.relay_antennas, self.terminal_antennas);
        let mut out = DMatrix::zeros(self.streams(), n);
        for l in 0..self.pairs {
            let scale = self.second_loss[k][l].sqrt();
            for r in 0..m {
                for c in 0..n {
                    out[(l * m + r, c)] = self.second_hop[k][l][(r, c)] * scale;
                }
            }
        }
        out
    }
}

/// Draw a complete two-hop realization. Entries are i.i.d. CN(0,1); path
/// losses come from the configured model. The draw order is fixed and part
/// of the reproducibility contract.
pub fn draw_realization(cfg: &NetworkConfig, stream: &mut RandomStream) -> ChannelRealization {
    let (k_count, l_count) = (cfg.relays, cfg.pairs);
    let (n, m) = (cfg.relay_antennas, cfg.terminal_antennas);
    let mut first_hop = Vec::with_capacity(k_count);
    let mut second_hop = Vec::with_capacity(k_count);
    let mut first_loss = Vec::with_capacity(k_count);
    let mut second_loss = Vec::with_capacity(k_count);
    for _ in 0..k_count {
        let mut hk = Vec::with_capacity(l_count);
        let mut gk = Vec::with_capacity(l_count);
        let mut ek = Vec::with_capacity(l_count);
        let mut fk = Vec::with_capacity(l_count);
        for _ in 0..l_count {
            let (e, f) = cfg.path_loss.sample(stream);
            ek.push(e);
            fk.push(f);
            hk.push(stream.complex_gaussian(n, m));
            gk.push(stream.complex_gaussian(m, n));
        }
        first_hop.push(hk);
        second_hop.push(gk);
        first_loss.push(ek);
        second_loss.push(fk);
    }
    ChannelRealization {
        relays: k_count,
        pairs: l_count,
        terminal_antennas: m,
        relay_antennas: n,
        first_hop,
        second_hop,
        first_loss,
        second_loss,
    }
}

/// One draw of the direct-transmission interference channel: per
/// (source i, destination j) an M x M complex gain block with i.i.d.
/// CN(0,1) entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectChannelRealization {
    pub pairs: usize,
    pub terminal_antennas: usize,
    /// `gains[i][j]` couples source `i` into destination `j`.
    pub gains: Vec<Vec<DMatrix<C64>>>,
}

pub fn draw_direct(cfg: &NetworkConfig, stream: &mut RandomStream) -> DirectChannelRealization {
    let l = cfg.pairs;
    let m = cfg.terminal_antennas;
    let gains = (0..l)
        .map(|_| (0..l).map(|_| stream.complex_gaussian(m, m)).collect())
        .collect();
    DirectChannelRealization {
        pairs: l,
        terminal_antennas: m,
        gains,
    }
}

// ---------------------------------------------------------------------------
// Portable dump formats for cross-implementation regression tests.
// Matrices are written row-major with interleaved re/im; binary is
// little-endian f64.

const TEXT_MAGIC: &str = "mrn-channel-text v1";
const BIN_MAGIC: &[u8; 8] = b"MRNCHAN1";

fn write_matrix_text<W: Write>(w: &mut W, m: &DMatrix<C64>) -> Result<()> {
    for r in 0..m.nrows() {
        let mut line = String::new();
        for c in 0..m.ncols() {
            let z = m[(r, c)];
            if c > 0 {
                line.push(' ');
            }
            line.push_str(&format!("{} {}", z.re, z.im));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Dump a realization as a line-oriented text table.
pub fn dump_text<W: Write>(real: &ChannelRealization, w: &mut W) -> Result<()> {
    writeln!(w, "{TEXT_MAGIC}")?;
    writeln!(
        w,
        "{} {} {} {}",
        real.relays, real.pairs, real.terminal_antennas, real.relay_antennas
    )?;
    for k in 0..real.relays {
        for l in 0..real.pairs {
            writeln!(w, "{} {}", real.first_loss[k][l], real.second_loss[k][l])?;
            write_matrix_text(w, &real.first_hop[k][l])?;
            write_matrix_text(w, &real.second_hop[k][l])?;
        }
    }
    Ok(())
}

fn parse_floats(line: &str, expect: usize) -> Result<Vec<f64>> {
    let vals: std::result::Result<Vec<f64>, _> =
        line.split_whitespace().map(str::parse::<f64>).collect();
    let vals = vals.map_err(|e| Error::Parse(format!("bad float: {e}")))?;
    if vals.len() != expect {
        return Err(Error::Parse(format!(
            "expected {expect} values, found {}",
            vals.len()
        )));
    }
    Ok(vals)
}

fn read_matrix_text<B: BufRead>(lines: &mut std::io::Lines<B>, rows: usize, cols: usize) -> Result<DMatrix<C64>> {
    let mut m = DMatrix::zeros(rows, cols);
    for r in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("truncated matrix".into()))??;
        let vals = parse_floats(&line, 2 * cols)?;
        for c in 0..cols {
            m[(r, c)] = Complex::new(vals[2 * c], vals[2 * c + 1]);
        }
    }
    Ok(m)
}

pub fn load_text<R: BufRead>(r: R) -> Result<ChannelRealization> {
    let mut lines = r.lines();
    let magic = lines
        .next()
        .ok_or_else(|| Error::Parse("empty dump".into()))??;
    if magic != TEXT_MAGIC {
        return Err(Error::Parse(format!("bad magic `{magic}`")));
    }
    let dims_line = lines
        .next()
        .ok_or_else(|| Error::Parse("missing dims".into()))??;
    let dims = parse_floats(&dims_line, 4)?;
    let (kc, lc, m, n) = (
        dims[0] as usize,
        dims[1] as usize,
        dims[2] as usize,
        dims[3] as usize,
    );
    let mut real = ChannelRealization {
        relays: kc,
        pairs: lc,
        terminal_antennas: m,
        relay_antennas: n,
        first_hop: vec![Vec::new(); kc],
        second_hop: vec![Vec::new(); kc],
        first_loss: vec![Vec::new(); kc],
        second_loss: vec![Vec::new(); kc],
    };
    for k in 0..kc {
        for _ in 0..lc {
            let loss_line = lines
                .next()
                .ok_or_else(|| Error::Parse("truncated losses".into()))??;
            let loss = parse_floats(&loss_line, 2)?;
            real.first_loss[k].push(loss[0]);
            real.second_loss[k].push(loss[1]);
            real.first_hop[k].push(read_matrix_text(&mut lines, n, m)?);
            real.second_hop[k].push(read_matrix_text(&mut lines, m, n)?);
        }
    }
    Ok(real)
}

fn write_matrix_bin<W: Write>(w: &mut W, m: &DMatrix<C64>) -> Result<()> {
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let z = m[(r, c)];
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn dump_binary<W: Write>(real: &ChannelRealization, w: &mut W) -> Result<()> {
    w.write_all(BIN_MAGIC)?;
    for dim in [
        real.relays,
        real.pairs,
        real.terminal_antennas,
        real.relay_antennas,
    ] {
        w.write_all(&(dim as u64).to_le_bytes())?;
    }
    for k in 0..real.relays {
        for l in 0..real.pairs {
            w.write_all(&real.first_loss[k][l].to_le_bytes())?;
            w.write_all(&real.second_loss[k][l].to_le_bytes())?;
            write_matrix_bin(w, &real.first_hop[k][l])?;
            write_matrix_bin(w, &real.second_hop[k][l])?;
        }
    }
    Ok(())
}

fn read_f64<R: std::io::Read>(r: &mut R) -> Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

fn read_matrix_bin<R: std::io::Read>(r: &mut R, rows: usize, cols: usize) -> Result<DMatrix<C64>> {
    let mut m = DMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let re = read_f64(r)?;
            let im = read_f64(r)?;
            m[(i, j)] = Complex::new(re, im);
        }
    }
    Ok(m)
}

pub fn load_binary<R: std::io::Read>(mut r: R) -> Result<ChannelRealization> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != BIN_MAGIC {
        return Err(Error::Parse("bad binary magic".into()));
    }
    let mut dim = [0usize; 4];
    for d in &mut dim {
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        *d = u64::from_le_bytes(buf) as usize;
    }
    let (kc, lc, m, n) = (dim[0], dim[1], dim[2], dim[3]);
    let mut real = ChannelRealization {
        relays: kc,
        pairs: lc,
        terminal_antennas: m,
        relay_antennas: n,
        first_hop: vec![Vec::new(); kc],
        second_hop: vec![Vec::new(); kc],
        first_loss: vec![Vec::new(); kc],
        second_loss: vec![Vec::new(); kc],
    };
    for k in 0..kc {
        for _ in 0..lc {
            real.first_loss[k].push(read_f64(&mut r)?);
            real.second_loss[k].push(read_f64(&mut r)?);
            real.first_hop[k].push(read_matrix_bin(&mut r, n, m)?);
            real.second_hop[k].push(read_matrix_bin(&mut r, m, n)?);
        }
    }
    Ok(real)
}
