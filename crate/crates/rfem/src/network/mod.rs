//! N-port parameter sets (S, Z, Y) over a frequency grid, conversions,
//! two-port terminations and cascades, canonical components and
//! Touchstone v1 I/O.

mod components;
mod touchstone;

pub use components::{component_sparams, Component, Element};
pub use touchstone::{ports_from_extension, touchstone_read, touchstone_write, FreqUnit, Touchstone, TsFormat};

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    S,
    Z,
    Y,
}

impl ParamKind {
    pub fn letter(&self) -> char {
        match self {
            ParamKind::S => 'S',
            ParamKind::Z => 'Z',
            ParamKind::Y => 'Y',
        }
    }
}

/// Frequency-indexed N-port data. `z_ref` holds one reference resistance per
/// port for S data and is empty for Z and Y data.
#[derive(Debug, Clone, PartialEq)]
pub struct NPortParams {
    pub kind: ParamKind,
    pub n_ports: usize,
    pub freqs: Vec<f64>,
    pub matrices: Vec<ComplexMatrix>,
    pub z_ref: Vec<f64>,
}

impl NPortParams {
    pub fn new(kind: ParamKind, freqs: Vec<f64>, matrices: Vec<ComplexMatrix>, z_ref: Vec<f64>) -> Result<Self> {
        if freqs.len() != matrices.len() {
            return Err(Error::Mismatch(format!("{} frequencies but {} matrices", freqs.len(), matrices.len())));
        }
        if freqs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("frequencies must be strictly ascending"));
        }
        let n = matrices.first().map_or(0, |m| m.rows());
        if n == 0 {
            return Err(Error::domain("need at least one port and one frequency"));
        }
        if matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Mismatch("matrices must all be n x n".into()));
        }
        match kind {
            ParamKind::S => {
                if z_ref.len() != n || z_ref.iter().any(|&z| !(z > 0.0)) {
                    return Err(Error::domain("S data needs a positive reference per port"));
                }
            }
            _ => {
                if !z_ref.is_empty() {
                    return Err(Error::domain("Z and Y data carry no reference impedance"));
                }
            }
        }
        Ok(Self { kind, n_ports: n, freqs, matrices, z_ref })
    }

    /// S data with the same reference on every port.
    pub fn s(freqs: Vec<f64>, matrices: Vec<ComplexMatrix>, z_ref: f64) -> Result<Self> {
        let n = matrices.first().map_or(0, |m| m.rows());
        Self::new(ParamKind::S, freqs, matrices, vec![z_ref; n])
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// The single reference shared by all ports, if there is one.
    pub fn uniform_z_ref(&self) -> Option<f64> {
        let first = *self.z_ref.first()?;
        self.z_ref.iter().all(|&z| z == first).then_some(first)
    }

    /// Entry (i, j) across frequency, zero-based ports.
    pub fn trace(&self, i: usize, j: usize) -> Vec<C64> {
        self.matrices.iter().map(|m| m[(i, j)]).collect()
    }

    pub fn convert(&self, to: ParamKind, z_ref: f64) -> Result<NPortParams> {
        convert(self, to, z_ref)
    }
}

fn check_same_grid(a: &NPortParams, b: &NPortParams) -> Result<()> {
    if a.freqs != b.freqs {
        return Err(Error::Mismatch("frequency grids differ".into()));
    }
    Ok(())
}

const MAX_CONDITION: f64 = 1e12;

fn invert_at(m: &ComplexMatrix, index: usize, what: &str) -> Result<ComplexMatrix> {
    let singular = || Error::Conversion { index, reason: format!("{what} is singular") };
    let inv = m.inverse().map_err(|_| singular())?;
    if m.max_abs() * inv.max_abs() > MAX_CONDITION {
        return Err(singular());
    }
    Ok(inv)
}

/// Converts between S, Z and Y. S data is produced at `z_ref` on every port.
pub fn convert(p: &NPortParams, to: ParamKind, z_ref: f64) -> Result<NPortParams> {
    if !(z_ref > 0.0) {
        return Err(Error::domain("reference impedance must be positive"));
    }
    let src_ref = match p.kind {
        ParamKind::S => p
            .uniform_z_ref()
            .ok_or_else(|| Error::Unsupported("conversion of S data with mixed port references".into()))?,
        _ => z_ref,
    };
    let n = p.n_ports;
    let eye = ComplexMatrix::identity(n);
    let s_to = |m: &ComplexMatrix, idx: usize, kind: ParamKind, r: f64| -> Result<ComplexMatrix> {
        // Z = r (I + S)(I - S)^-1, Y = (I - S)(I + S)^-1 / r
        let (a, b, scale) = match kind {
            ParamKind::Z => (eye.add(m)?, eye.sub(m)?, r),
            _ => (eye.sub(m)?, eye.add(m)?, 1.0 / r),
        };
        let what = if kind == ParamKind::Z { "I - S" } else { "I + S" };
        Ok(a.mul(&invert_at(&b, idx, what)?)?.scale(C64::new(scale, 0.0)))
    };
    let to_s = |m: &ComplexMatrix, idx: usize, kind: ParamKind| -> Result<ComplexMatrix> {
        // S = (Z - r)(Z + r)^-1 = (I - rY)(I + rY)^-1
        let (a, b) = match kind {
            ParamKind::Z => {
                let zr = eye.scale(C64::new(z_ref, 0.0));
                (m.sub(&zr)?, m.add(&zr)?)
            }
            _ => {
                let ry = m.scale(C64::new(z_ref, 0.0));
                (eye.sub(&ry)?, eye.add(&ry)?)
            }
        };
        a.mul(&invert_at(&b, idx, "network + reference")?)
    };
    let mut out = Vec::with_capacity(p.len());
    for (idx, m) in p.matrices.iter().enumerate() {
        let converted = match (p.kind, to) {
            (a, b) if a == b && (a != ParamKind::S || src_ref == z_ref) => m.clone(),
            (ParamKind::S, ParamKind::S) => match s_to(m, idx, ParamKind::Z, src_ref) {
                Ok(z) => to_s(&z, idx, ParamKind::Z)?,
                Err(_) => to_s(&s_to(m, idx, ParamKind::Y, src_ref)?, idx, ParamKind::Y)?,
            },
            (ParamKind::S, kind) => s_to(m, idx, kind, src_ref)?,
            (kind, ParamKind::S) => to_s(m, idx, kind)?,
            (ParamKind::Z, _) => invert_at(m, idx, "Z")?,
            _ => invert_at(m, idx, "Y")?,
        };
        out.push(converted);
    }
    let refs = if to == ParamKind::S { vec![z_ref; n] } else { Vec::new() };
    NPortParams::new(to, p.freqs.clone(), out, refs)
}

/// Source and load reflection coefficients seen by a two-port.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortTermination {
    pub gamma_s: C64,
    pub gamma_l: C64,
}

impl PortTermination {
    pub fn matched() -> Self {
        Self { gamma_s: C64::new(0.0, 0.0), gamma_l: C64::new(0.0, 0.0) }
    }

    pub fn from_impedances(z_s: C64, z_l: C64, z0: f64) -> Self {
        let g = |z: C64| (z - z0) / (z + z0);
        Self { gamma_s: g(z_s), gamma_l: g(z_l) }
    }

    pub fn is_passive(&self) -> bool {
        self.gamma_s.norm() <= 1.0 && self.gamma_l.norm() <= 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPortGammas {
    pub gamma_in: C64,
    pub gamma_out: C64,
}

fn s2(s: &ComplexMatrix) -> Result<[C64; 4]> {
    if s.rows() != 2 || s.cols() != 2 {
        return Err(Error::Mismatch("expected a 2x2 S matrix".into()));
    }
    Ok([s[(0, 0)], s[(0, 1)], s[(1, 0)], s[(1, 1)]])
}

/// Γin = S11 + S12 S21 ΓL / (1 − S22 ΓL) and the mirror for Γout.
pub fn two_port_gammas(s: &ComplexMatrix, term: &PortTermination) -> Result<TwoPortGammas> {
    let [s11, s12, s21, s22] = s2(s)?;
    let one = C64::new(1.0, 0.0);
    let gl = term.gamma_l;
    let gs = term.gamma_s;
    Ok(TwoPortGammas {
        gamma_in: s11 + s12 * s21 * gl / (one - s22 * gl),
        gamma_out: s22 + s12 * s21 * gs / (one - s11 * gs),
    })
}

/// Connects port 2 of `a` to port 1 of `b`.
pub fn cascade(a: &NPortParams, b: &NPortParams) -> Result<NPortParams> {
    if a.kind != ParamKind::S || b.kind != ParamKind::S || a.n_ports != 2 || b.n_ports != 2 {
        return Err(Error::Unsupported("cascade needs two-port S data".into()));
    }
    check_same_grid(a, b)?;
    if a.z_ref[1] != b.z_ref[0] {
        return Err(Error::Mismatch("reference impedances at the joined ports differ".into()));
    }
    let mut out = Vec::with_capacity(a.len());
    for (idx, (ma, mb)) in a.matrices.iter().zip(&b.matrices).enumerate() {
        out.push(star(ma, mb).map_err(|_| Error::Conversion {
            index: idx,
            reason: "internal resonance: 1 - S22a S11b vanishes".into(),
        })?);
    }
    NPortParams::new(ParamKind::S, a.freqs.clone(), out, vec![a.z_ref[0], b.z_ref[1]])
}

/// Redheffer star product of two 2x2 scattering matrices.
pub fn star(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let [a11, a12, a21, a22] = s2(a)?;
    let [b11, b12, b21, b22] = s2(b)?;
    let d = C64::new(1.0, 0.0) - a22 * b11;
    if d.norm() < 1e-300 {
        return Err(Error::Singular { pivot: 0 });
    }
    ComplexMatrix::from_rows(&[
        vec![a11 + a12 * b11 * a21 / d, a12 * b12 / d],
        vec![a21 * b21 / d, b22 + b21 * a22 * b12 / d],
    ])
}

/// ABCD (chain) matrix `[[A, B], [C, D]]`.
pub type Abcd = [[C64; 2]; 2];

pub fn abcd_identity() -> Abcd {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    [[one, zero], [zero, one]]
}

pub fn abcd_mul(x: &Abcd, y: &Abcd) -> Abcd {
    let mut r = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    r
}

pub fn abcd_to_s(m: &Abcd, z0: f64) -> Result<ComplexMatrix> {
    let [[a, b], [c, d]] = *m;
    let bz = b / z0;
    let cz = c * z0;
    let den = a + bz + cz + d;
    if den.norm() == 0.0 {
        return Err(Error::Singular { pivot: 0 });
    }
    ComplexMatrix::from_rows(&[
        vec![(a + bz - cz - d) / den, 2.0 * (a * d - b * c) / den],
        vec![2.0 / den, (-a + bz - cz + d) / den],
    ])
}

pub fn s_to_abcd(s: &ComplexMatrix, z0: f64) -> Result<Abcd> {
    let [s11, s12, s21, s22] = s2(s)?;
    if s21.norm() == 0.0 {
        return Err(Error::Singular { pivot: 0 });
    }
    let one = C64::new(1.0, 0.0);
    let den = 2.0 * s21;
    Ok([
        [
            ((one + s11) * (one - s22) + s12 * s21) / den,
            z0 * ((one + s11) * (one + s22) - s12 * s21) / den,
        ],
        [
            ((one - s11) * (one - s22) - s12 * s21) / (z0 * den),
            ((one - s11) * (one + s22) + s12 * s21) / den,
        ],
    ])
}
