//! Method of moments for a center-fed thin cylindrical wire along z.
//!
//! Pocklington kernel with piece-wise constant basis functions and a
//! delta-gap source. The expansion current sits on the wire surface
//! (`ρ = a`) and testing happens on the axis, so the reduced kernel
//! `e^{-jk0R}/(4πR)`, `R = √(a² + (z − z0)²)`, stays finite.
//!
//! For pulse functions of width `Δ`, the Galerkin entry collapses to a single
//! integral over the center offset `c = z_m − z_n`:
//!
//! ```text
//! Z_mn = −jωμ0 [ ∫ G(s) (Δ − |s − c|) ds + (G(c+Δ) − 2G(c) + G(c−Δ)) / k0² ]
//! ```
//!
//! and depends on `|m − n|` only, so one row fills the whole matrix.

use crate::error::{Error, Result};
use crate::numerics::{integrate_breaks, solve_complex_dense, ComplexMatrix, QuadratureSpec, C64, J};
use crate::radiator::FarFieldSample;
use crate::tline::{eta0, C0, MU0};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Testing {
    #[default]
    Galerkin,
    /// Point matching at segment centers.
    Collocation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireProblem {
    pub half_length: f64,
    pub radius: f64,
    pub freq: f64,
    pub n_segments: usize,
    /// Defaults to the center segment.
    pub feed_index: Option<usize>,
    pub v_gap: f64,
    pub testing: Testing,
}

impl WireProblem {
    pub fn new(half_length: f64, radius: f64, freq: f64, n_segments: usize) -> Self {
        Self { half_length, radius, freq, n_segments, feed_index: None, v_gap: 1.0, testing: Testing::Galerkin }
    }

    pub fn wavelength(&self) -> f64 {
        C0 / self.freq
    }

    pub fn k0(&self) -> f64 {
        2.0 * PI / self.wavelength()
    }

    pub fn feed(&self) -> usize {
        self.feed_index.unwrap_or(self.n_segments / 2)
    }

    fn validate(&self) -> Result<()> {
        if !(self.half_length > 0.0) || !(self.radius > 0.0) || !(self.freq > 0.0) {
            return Err(Error::domain("length, radius and frequency must be positive"));
        }
        if self.n_segments < 3 {
            return Err(Error::domain("need at least 3 segments"));
        }
        if self.n_segments % 2 == 0 {
            return Err(Error::domain("segment count must be odd so a segment is centered at z = 0"));
        }
        if self.feed() >= self.n_segments {
            return Err(Error::domain(format!("feed index {} outside 0..{}", self.feed(), self.n_segments)));
        }
        if self.radius >= self.half_length {
            return Err(Error::domain("radius must be smaller than the half length"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub boundaries: Vec<f64>,
    pub centers: Vec<f64>,
    pub delta: f64,
}

pub fn segment_wire(p: &WireProblem) -> Result<Mesh> {
    p.validate()?;
    let n = p.n_segments;
    let delta = 2.0 * p.half_length / n as f64;
    let boundaries = (0..=n).map(|i| -p.half_length + delta * i as f64).collect();
    let centers = (0..n).map(|i| -p.half_length + delta * (i as f64 + 0.5)).collect();
    Ok(Mesh { boundaries, centers, delta })
}

fn kernel(k: f64, a: f64, s: f64) -> C64 {
    let r = (a * a + s * s).sqrt();
    (-J * k * r).exp() / (4.0 * PI * r)
}

/// `dG/ds` of the reduced kernel.
fn kernel_ds(k: f64, a: f64, s: f64) -> C64 {
    let r = (a * a + s * s).sqrt();
    -(1.0 + J * k * r) * (-J * k * r).exp() * s / (4.0 * PI * r * r * r)
}

/// Breakpoints on `[lo, hi]` that resolve the kernel peak at `s = 0`.
fn breaks(lo: f64, hi: f64, a: f64) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    for s in [-10.0 * a, -a, 0.0, a, 10.0 * a] {
        if s > lo && s < hi {
            pts.push(s);
        }
    }
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts
}

fn entry(p: &WireProblem, mesh: &Mesh, offset: usize, spec: &QuadratureSpec) -> Result<C64> {
    let (k, a, d) = (p.k0(), p.radius, mesh.delta);
    let c = offset as f64 * d;
    let omega = 2.0 * PI * p.freq;
    let scale = -J * omega * MU0;
    match p.testing {
        Testing::Galerkin => {
            let pts = breaks(c - d, c + d, a);
            let tri = integrate_breaks(|s: f64| kernel(k, a, s) * (d - (s - c).abs()), &pts, spec)?;
            let second = (kernel(k, a, c + d) - 2.0 * kernel(k, a, c) + kernel(k, a, c - d)) / (k * k);
            Ok(scale * (tri.value + second))
        }
        Testing::Collocation => {
            let pts = breaks(c - d / 2.0, c + d / 2.0, a);
            let flat = integrate_breaks(|s: f64| kernel(k, a, s), &pts, spec)?;
            let second = (kernel_ds(k, a, c + d / 2.0) - kernel_ds(k, a, c - d / 2.0)) / (k * k);
            // rows scaled by Δ so the delta-gap entry is V_g in both schemes
            Ok(scale * (flat.value + second) * d)
        }
    }
}

/// Symmetric Toeplitz impedance matrix from one computed row.
pub fn fill_impedance_matrix(p: &WireProblem, mesh: &Mesh, spec: &QuadratureSpec) -> Result<ComplexMatrix> {
    let n = mesh.centers.len();
    let mut row = Vec::with_capacity(n);
    for off in 0..n {
        let z = entry(p, mesh, off, spec).map_err(|e| Error::Fill { m: 0, n: off, reason: e.to_string() })?;
        row.push(z);
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| row[i.abs_diff(j)]))
}

pub fn excitation_vector(p: &WireProblem, mesh: &Mesh) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); mesh.centers.len()];
    v[p.feed()] = C64::new(p.v_gap, 0.0);
    v
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomSolution {
    pub problem: WireProblem,
    pub currents: Vec<C64>,
    pub z_in: C64,
    pub segment_centers: Vec<f64>,
    pub delta: f64,
    pub warnings: Vec<String>,
}

impl MomSolution {
    pub fn feed_current(&self) -> C64 {
        self.currents[self.problem.feed()]
    }

    /// Input power `½ Re(V I*)`.
    pub fn input_power(&self) -> f64 {
        0.5 * (C64::new(self.problem.v_gap, 0.0) * self.feed_current().conj()).re
    }
}

/// Solves `[Z][I] + [V] = 0` and returns `Z_in = V_g / I_feed`.
pub fn solve_currents(p: &WireProblem, spec: &QuadratureSpec) -> Result<MomSolution> {
    let mesh = segment_wire(p)?;
    let mut warnings = Vec::new();
    if 2.0 * p.radius >= p.wavelength() / 100.0 {
        warnings.push("wire diameter is not below λ0/100; the thin-wire kernel loses accuracy".to_string());
    }
    let z = fill_impedance_matrix(p, &mesh, spec)?;
    let v = excitation_vector(p, &mesh);
    let neg: Vec<C64> = v.iter().map(|x| -x).collect();
    let currents = solve_complex_dense(&z, &neg)?;
    let i_feed = currents[p.feed()];
    if i_feed.norm() == 0.0 {
        return Err(Error::Degenerate("zero feed current".into()));
    }
    Ok(MomSolution {
        problem: *p,
        z_in: C64::new(p.v_gap, 0.0) / i_feed,
        currents,
        segment_centers: mesh.centers,
        delta: mesh.delta,
        warnings,
    })
}

/// Far field of the solved current; each pulse contributes a sinc factor.
pub fn mom_far_field(sol: &MomSolution, theta: f64) -> FarFieldSample {
    let k = sol.problem.k0();
    let (st, ct) = theta.sin_cos();
    let x = k * sol.delta * ct / 2.0;
    let sinc = if x.abs() < 1e-8 { 1.0 } else { x.sin() / x };
    let sum: C64 = sol
        .currents
        .iter()
        .zip(&sol.segment_centers)
        .map(|(i, z)| i * (J * k * z * ct).exp())
        .sum();
    FarFieldSample {
        e_theta: J * k * eta0() / (4.0 * PI) * st * sol.delta * sinc * sum,
        e_phi: C64::new(0.0, 0.0),
    }
}

/// Radiated power from the far field of the solved current.
pub fn mom_radiated_power(sol: &MomSolution, spec: &QuadratureSpec) -> Result<f64> {
    let pts: Vec<f64> = (0..=32).map(|i| PI * i as f64 / 32.0).collect();
    let q = integrate_breaks(|t: f64| mom_far_field(sol, t).intensity() * t.sin(), &pts, spec)?;
    Ok(2.0 * PI * q.value / (2.0 * eta0()))
}

/// Relative L2 distance between the solved current and the best complex
/// multiple of `sin(k0(l − |z|))`.
pub fn sinusoid_shape_error(sol: &MomSolution) -> f64 {
    let k = sol.problem.k0();
    let l = sol.problem.half_length;
    let s: Vec<f64> = sol.segment_centers.iter().map(|z| (k * (l - z.abs())).sin()).collect();
    let ss: f64 = s.iter().map(|x| x * x).sum();
    let alpha: C64 = sol.currents.iter().zip(&s).map(|(i, x)| i * *x).sum::<C64>() / ss;
    let num: f64 = sol.currents.iter().zip(&s).map(|(i, x)| (i - alpha * *x).norm_sqr()).sum();
    let den: f64 = sol.currents.iter().map(|i| i.norm_sqr()).sum();
    (num / den).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n_segments: usize,
    pub z_in: C64,
    /// `|z_in(N) − z_in(previous N)|`.
    pub delta: Option<f64>,
}

pub fn convergence_report(p: &WireProblem, n_sequence: &[usize], spec: &QuadratureSpec) -> Result<Vec<ConvergenceRow>> {
    if n_sequence.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("segment counts must be ascending"));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(n_sequence.len());
    for &n in n_sequence {
        let sol = solve_currents(&WireProblem { n_segments: n, feed_index: None, ..*p }, spec)?;
        let delta = rows.last().map(|r| (sol.z_in - r.z_in).norm());
        rows.push(ConvergenceRow { n_segments: n, z_in: sol.z_in, delta });
    }
    Ok(rows)
}
