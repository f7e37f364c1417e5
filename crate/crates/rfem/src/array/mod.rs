//! Phased-array analysis on isotropic or embedded elements.
//!
//! Patterns are expressed in direction cosines `u = sinθ cosφ`,
//! `v = sinθ sinφ`. An element at `(x, y)` with excitation `a` contributes
//! `a e^{jk0(xu + yv)}`; steering applies `a = |a| e^{-jψ}`.

mod analysis;
mod errors;
mod focal;
mod taper;

pub use analysis::{
    active_reflection, array_snr, calibration, directivity_taper_efficiency, grating_lobes, max_spacing,
    ActiveElement, ArraySnr, Calibration, TaperReport,
};
pub use errors::{error_statistics, ClosedFormErrors, ErrorModel, ErrorStatistics, MonteCarloErrors};
pub use focal::{
    average_sidelobe_level, beam_squint, broadened_hpbw, fpa_efficiency, fpa_focal_field, sparse_layout,
    SparseKind, SparseLayout, Squint, FPA_DEFAULT_PSI0,
};
pub use taper::{
    schelkunov_coefficients, schelkunov_zeros, taper_generate, zero_direction, Taper, MIN_TAPER_SLL_DB,
};

use crate::error::{Error, Result};
use crate::numerics::{db20, C64};
use crate::radiator::{pattern_metrics, FarFieldSample, PatternMetrics, PATTERN_FLOOR_DB};
use crate::tline::C0;
use rustfft::FftPlanner;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LayoutKind {
    Linear { dx: f64 },
    /// Element `ix + iy·nx` sits at `(x0 + ix·dx, y0 + iy·dy)`.
    RectGrid { nx: usize, ny: usize, dx: f64, dy: f64 },
    SparseRegular { nx: usize, ny: usize, dx: f64, dy: f64 },
    Sunflower,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrayLayout {
    pub positions: Vec<(f64, f64)>,
    pub kind: LayoutKind,
}

impl ArrayLayout {
    /// `k` elements along x with spacing `dx` (m), first element at the origin.
    pub fn linear(k: usize, dx: f64) -> Result<Self> {
        if k == 0 || !(dx > 0.0) {
            return Err(Error::domain("linear array needs k >= 1 and dx > 0"));
        }
        let positions = (0..k).map(|i| (i as f64 * dx, 0.0)).collect();
        Ok(Self { positions, kind: LayoutKind::Linear { dx } })
    }

    pub fn rect_grid(nx: usize, ny: usize, dx: f64, dy: f64) -> Result<Self> {
        let positions = grid_positions(nx, ny, dx, dy)?;
        Ok(Self { positions, kind: LayoutKind::RectGrid { nx, ny, dx, dy } })
    }

    pub fn custom(positions: Vec<(f64, f64)>) -> Result<Self> {
        let layout = Self { positions, kind: LayoutKind::Custom };
        layout.validate()?;
        Ok(layout)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.positions.is_empty() {
            return Err(Error::domain("layout has no elements"));
        }
        if self.positions.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::domain("element positions must be finite"));
        }
        if matches!(self.kind, LayoutKind::Linear { .. }) && self.positions.iter().any(|p| p.1 != 0.0) {
            return Err(Error::domain("linear layouts have y = 0"));
        }
        let mut sorted = self.positions.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("element positions must be distinct"));
        }
        Ok(())
    }

    /// `(nx, ny, dx, dy)` for layouts on a uniform rectangular lattice.
    pub fn uniform_grid(&self) -> Option<(usize, usize, f64, f64)> {
        match self.kind {
            LayoutKind::Linear { dx } => Some((self.len(), 1, dx, dx)),
            LayoutKind::RectGrid { nx, ny, dx, dy } | LayoutKind::SparseRegular { nx, ny, dx, dy } => {
                Some((nx, ny, dx, dy))
            }
            _ => None,
        }
    }

    pub fn is_linear(&self) -> bool {
        self.positions.iter().all(|p| p.1 == 0.0)
    }
}

pub(crate) fn grid_positions(nx: usize, ny: usize, dx: f64, dy: f64) -> Result<Vec<(f64, f64)>> {
    if nx == 0 || ny == 0 || !(dx > 0.0) || !(dy > 0.0) {
        return Err(Error::domain("grid needs nx, ny >= 1 and positive spacings"));
    }
    Ok((0..ny).flat_map(|iy| (0..nx).map(move |ix| (ix as f64 * dx, iy as f64 * dy))).collect())
}

pub fn wavenumber(freq: f64) -> f64 {
    2.0 * PI * freq / C0
}

fn check_direction(u: f64, v: f64) -> Result<()> {
    if !(u.abs() <= 1.0 && v.abs() <= 1.0 && u * u + v * v <= 1.0 + 1e-12) {
        return Err(Error::domain(format!("direction ({u}, {v}) lies outside the unit disk")));
    }
    Ok(())
}

/// Progressive phases `ψ = k0(x u0 + y v0)` that steer the beam to `(u0, v0)`.
pub fn steering_phases(layout: &ArrayLayout, u0: f64, v0: f64, freq: f64) -> Result<Vec<f64>> {
    check_direction(u0, v0)?;
    if !(freq > 0.0) {
        return Err(Error::domain("frequency must be positive"));
    }
    let k0 = wavenumber(freq);
    Ok(layout.positions.iter().map(|&(x, y)| k0 * (x * u0 + y * v0)).collect())
}

/// Excitation `|a_k| e^{-jψ_k}` steered to `(u0, v0)`.
pub fn steered_excitation(layout: &ArrayLayout, amplitudes: &[f64], u0: f64, v0: f64, freq: f64) -> Result<Vec<C64>> {
    if amplitudes.len() != layout.len() {
        return Err(Error::Mismatch(format!("{} amplitudes for {} elements", amplitudes.len(), layout.len())));
    }
    let psi = steering_phases(layout, u0, v0, freq)?;
    Ok(amplitudes.iter().zip(psi).map(|(&m, p)| C64::from_polar(m, -p)).collect())
}

pub(crate) fn check_excitation(layout: &ArrayLayout, a: &[C64]) -> Result<()> {
    if a.len() != layout.len() {
        return Err(Error::Mismatch(format!("{} excitations for {} elements", a.len(), layout.len())));
    }
    if a.iter().all(|x| x.norm() == 0.0) {
        return Err(Error::Degenerate("all excitations are zero".into()));
    }
    Ok(())
}

/// Bare array factor `Σ a_k e^{jk0(x_k u + y_k v)}`.
///
/// Evaluated for any `(u, v)`, including invisible space.
pub fn array_factor(layout: &ArrayLayout, a: &[C64], u: f64, v: f64, freq: f64) -> C64 {
    let k0 = wavenumber(freq);
    af_sum(&layout.positions, a, k0, u, v)
}

pub(crate) fn af_sum(positions: &[(f64, f64)], a: &[C64], k0: f64, u: f64, v: f64) -> C64 {
    positions.iter().zip(a).map(|(&(x, y), &w)| w * C64::from_polar(1.0, k0 * (x * u + y * v))).sum()
}

/// Element pattern as a function of `(u, v)`.
pub type ElementPattern = Arc<dyn Fn(f64, f64) -> FarFieldSample + Send + Sync>;

#[derive(Clone, Default)]
pub struct CouplingModel {
    /// Element-port scattering matrix at the operating frequency.
    pub s_matrix: Option<crate::numerics::ComplexMatrix>,
    /// Isolated element pattern; `None` means isotropic.
    pub element: Option<ElementPattern>,
}

impl std::fmt::Debug for CouplingModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CouplingModel")
            .field("s_matrix", &self.s_matrix)
            .field("element", &self.element.as_ref().map(|_| "fn(u, v)"))
            .finish()
    }
}

/// Array factor including the element pattern and the scan-loss weighting
/// `√(1 − |R_act|²)` of each element for the excitation `a`.
///
/// Isotropic elements return the scalar sum in `e_theta`.
pub fn array_factor_embedded(
    layout: &ArrayLayout,
    a: &[C64],
    u: f64,
    v: f64,
    freq: f64,
    coupling: &CouplingModel,
) -> Result<FarFieldSample> {
    check_excitation(layout, a)?;
    let weights: Vec<C64> = match &coupling.s_matrix {
        None => a.to_vec(),
        Some(s) => active_reflection(s, a, 50.0)?
            .iter()
            .zip(a)
            .map(|(el, &w)| w * el.pattern_scale.unwrap_or(0.0))
            .collect(),
    };
    let af = array_factor(layout, &weights, u, v, freq);
    Ok(match &coupling.element {
        None => FarFieldSample { e_theta: af, e_phi: C64::new(0.0, 0.0) },
        Some(f) => {
            let e = f(u, v);
            FarFieldSample { e_theta: af * e.e_theta, e_phi: af * e.e_phi }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMethod {
    Direct,
    Fft,
}

/// Sample points of a pattern grid.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    /// Explicit `u` and `v` axes; always evaluated by direct summation.
    Axes { u: Vec<f64>, v: Vec<f64> },
    /// DFT bins `u = mλ0/(N dx)` with `N = pad·nx` (and likewise in v),
    /// restricted to `|u|, |v| ≤ 1`.
    Dft { pad: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternGrid {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    /// Row-major in v: `values[iv * u.len() + iu]`.
    pub values: Vec<C64>,
    pub method: GridMethod,
    pub warnings: Vec<String>,
}

impl PatternGrid {
    pub fn at(&self, iu: usize, iv: usize) -> C64 {
        self.values[iv * self.u.len() + iu]
    }

    /// `20 log10 |S|` normalized to the grid maximum, floored.
    pub fn power_db(&self) -> Vec<f64> {
        let peak = self.values.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        self.values
            .iter()
            .map(|z| if peak > 0.0 { db20(z.norm() / peak).max(PATTERN_FLOOR_DB) } else { PATTERN_FLOOR_DB })
            .collect()
    }

    /// `(u, v, F_dB)` rows.
    pub fn rows(&self) -> Vec<(f64, f64, f64)> {
        let db = self.power_db();
        let nu = self.u.len();
        db.iter().enumerate().map(|(i, &f)| (self.u[i % nu], self.v[i / nu], f)).collect()
    }
}

/// Bins `u = mλ0/(N d)` covering `[−1, 1]`, paired with their FFT index
/// `m mod N`; spacings above λ0/2 repeat the DFT period.
fn dft_axis(n: usize, d: f64, freq: f64) -> Vec<(usize, f64)> {
    let step = C0 / freq / (n as f64 * d);
    let m_max = ((1.0 + 1e-12) / step).floor() as i64;
    (-m_max..=m_max).map(|m| (m.rem_euclid(n as i64) as usize, m as f64 * step)).collect()
}

/// Sampled array factor over a `(u, v)` grid.
///
/// The FFT path needs a uniform rectangular lattice and a DFT grid; any other
/// request falls back to direct summation with a warning.
pub fn pattern_grid(layout: &ArrayLayout, a: &[C64], grid: &GridSpec, freq: f64, use_fft: bool) -> Result<PatternGrid> {
    check_excitation(layout, a)?;
    if !(freq > 0.0) {
        return Err(Error::domain("frequency must be positive"));
    }
    let mut warnings = Vec::new();
    let (u_axis, v_axis, fft_ok) = match grid {
        GridSpec::Axes { u, v } => {
            if use_fft {
                warnings.push("FFT needs a DFT grid; evaluated by direct summation".to_string());
            }
            (u.iter().map(|&x| (0, x)).collect::<Vec<_>>(), v.iter().map(|&x| (0, x)).collect::<Vec<_>>(), false)
        }
        GridSpec::Dft { pad } => {
            if *pad == 0 {
                return Err(Error::domain("pad factor must be at least 1"));
            }
            match layout.uniform_grid() {
                Some((nx, ny, dx, dy)) => {
                    let us = dft_axis(pad * nx, dx, freq);
                    let vs = if ny == 1 { vec![(0, 0.0)] } else { dft_axis(pad * ny, dy, freq) };
                    (us, vs, true)
                }
                None => {
                    if use_fft {
                        warnings.push("layout is not a uniform grid; evaluated by direct summation".to_string());
                    }
                    let n = pad * layout.len().max(2);
                    let axis: Vec<(usize, f64)> =
                        (0..n).map(|i| (0, -1.0 + 2.0 * i as f64 / (n - 1) as f64)).collect();
                    let vs = if layout.is_linear() { vec![(0, 0.0)] } else { axis.clone() };
                    (axis, vs, false)
                }
            }
        }
    };
    let u: Vec<f64> = u_axis.iter().map(|p| p.1).collect();
    let v: Vec<f64> = v_axis.iter().map(|p| p.1).collect();
    if use_fft && fft_ok {
        let GridSpec::Dft { pad } = grid else { unreachable!() };
        let values = fft_values(layout, a, *pad, &u_axis, &v_axis, freq);
        return Ok(PatternGrid { u, v, values, method: GridMethod::Fft, warnings });
    }
    let k0 = wavenumber(freq);
    let values = v.iter().flat_map(|&vv| u.iter().map(move |&uu| (uu, vv))).map(|(uu, vv)| af_sum(&layout.positions, a, k0, uu, vv)).collect();
    Ok(PatternGrid { u, v, values, method: GridMethod::Direct, warnings })
}

fn fft_values(layout: &ArrayLayout, a: &[C64], pad: usize, u_axis: &[(usize, f64)], v_axis: &[(usize, f64)], freq: f64) -> Vec<C64> {
    let (nx, ny, _, _) = layout.uniform_grid().expect("uniform grid");
    let (mx, my) = (pad * nx, if ny == 1 { 1 } else { pad * ny });
    let mut buf = vec![C64::new(0.0, 0.0); mx * my];
    for iy in 0..ny {
        for ix in 0..nx {
            buf[iy * mx + ix] = a[iy * nx + ix];
        }
    }
    let mut planner = FftPlanner::<f64>::new();
    let fx = planner.plan_fft_inverse(mx);
    for row in buf.chunks_mut(mx) {
        fx.process(row);
    }
    if my > 1 {
        let fy = planner.plan_fft_inverse(my);
        let mut col = vec![C64::new(0.0, 0.0); my];
        for ix in 0..mx {
            for iy in 0..my {
                col[iy] = buf[iy * mx + ix];
            }
            fy.process(&mut col);
            for iy in 0..my {
                buf[iy * mx + ix] = col[iy];
            }
        }
    }
    let k0 = wavenumber(freq);
    let (x0, y0) = layout.positions[0];
    let mut out = Vec::with_capacity(u_axis.len() * v_axis.len());
    for &(jv, v) in v_axis {
        for &(ju, u) in u_axis {
            out.push(buf[jv * mx + ju] * C64::from_polar(1.0, k0 * (x0 * u + y0 * v)));
        }
    }
    out
}

/// Normalized pattern `20 log10 |S|` along `θ ∈ [−90°, 90°]` in the plane `φ`.
pub fn pattern_cut(layout: &ArrayLayout, a: &[C64], phi_deg: f64, n: usize, freq: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    check_excitation(layout, a)?;
    if n < 3 {
        return Err(Error::domain("need at least three samples"));
    }
    let k0 = wavenumber(freq);
    let (cp, sp) = (phi_deg.to_radians().cos(), phi_deg.to_radians().sin());
    let thetas: Vec<f64> = (0..n).map(|i| -90.0 + 180.0 * i as f64 / (n - 1) as f64).collect();
    let mags: Vec<f64> = thetas
        .iter()
        .map(|t| {
            let s = t.to_radians().sin();
            af_sum(&layout.positions, a, k0, s * cp, s * sp).norm()
        })
        .collect();
    let peak = mags.iter().cloned().fold(0.0, f64::max);
    let db = mags.iter().map(|&m| db20(m / peak).max(PATTERN_FLOOR_DB)).collect();
    Ok((thetas, db))
}

/// Beam width, peak sidelobe and nulls of a `θ` cut.
pub fn cut_metrics(layout: &ArrayLayout, a: &[C64], phi_deg: f64, n: usize, freq: f64) -> Result<PatternMetrics> {
    let (t, db) = pattern_cut(layout, a, phi_deg, n, freq)?;
    pattern_metrics(&t, &db)
}

/// Uniform linear array closed form `|sin(Kx)/sin x|`, `x = k0 d (u − u0)/2`.
pub fn uniform_linear_magnitude(k: usize, d: f64, u: f64, u0: f64, freq: f64) -> f64 {
    let x = wavenumber(freq) * d * (u - u0) / 2.0;
    let s = x.sin();
    if s.abs() < 1e-12 {
        k as f64
    } else {
        ((k as f64 * x).sin() / s).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: f64 = 10e9;

    fn lam() -> f64 {
        C0 / F
    }

    #[test]
    fn broadside_phases_vanish() {
        let l = ArrayLayout::linear(8, lam() / 2.0).unwrap();
        assert!(steering_phases(&l, 0.0, 0.0, F).unwrap().iter().all(|&p| p == 0.0));
        let l2 = ArrayLayout::linear(2, lam() / 2.0).unwrap();
        let p = steering_phases(&l2, 1.0, 0.0, F).unwrap();
        assert!((p[1] - p[0] - PI).abs() < 1e-12);
        assert!(steering_phases(&l2, 0.8, 0.8, F).is_err());
    }

    #[test]
    fn steered_sum_is_coherent() {
        let l = ArrayLayout::rect_grid(5, 4, 0.6 * lam(), 0.55 * lam()).unwrap();
        let amps: Vec<f64> = (0..20).map(|i| 0.5 + 0.03 * i as f64).collect();
        let a = steered_excitation(&l, &amps, 0.3, -0.4, F).unwrap();
        let s = array_factor(&l, &a, 0.3, -0.4, F);
        assert!((s.norm() - amps.iter().sum::<f64>()).abs() < 1e-12);
    }

    #[test]
    fn uniform_closed_form() {
        let d = lam() / 2.0;
        let l = ArrayLayout::linear(16, d).unwrap();
        let a = steered_excitation(&l, &[1.0; 16], 0.2, 0.0, F).unwrap();
        for i in 0..200 {
            let u = -1.0 + 0.01 * i as f64;
            let direct = array_factor(&l, &a, u, 0.0, F).norm();
            assert!((direct - uniform_linear_magnitude(16, d, u, 0.2, F)).abs() < 1e-10);
        }
        let one = ArrayLayout::linear(1, d).unwrap();
        let c1 = array_factor(&one, &[C64::new(2.0, 0.0)], 0.1, 0.0, F).norm();
        let c2 = array_factor(&one, &[C64::new(2.0, 0.0)], -0.7, 0.0, F).norm();
        assert!((c1 - c2).abs() < 1e-15);
    }

    #[test]
    fn sixteen_element_uniform_cut() {
        let l = ArrayLayout::linear(16, lam() / 2.0).unwrap();
        let m = cut_metrics(&l, &[C64::new(1.0, 0.0); 16], 0.0, 36001, F).unwrap();
        assert!((m.first_sidelobe_db.unwrap() + 13.15).abs() < 0.05);
        // exact half-power width of sin(16x)/(16 sin x)
        assert!((m.hpbw_deg.unwrap() - 6.3587).abs() < 0.002);
    }

    #[test]
    fn fft_matches_direct_linear() {
        let l = ArrayLayout::linear(8, lam() / 2.0).unwrap();
        let a: Vec<C64> = (0..8).map(|i| C64::from_polar(1.0 + 0.1 * i as f64, 0.3 * i as f64)).collect();
        let g = GridSpec::Dft { pad: 8 };
        let f = pattern_grid(&l, &a, &g, F, true).unwrap();
        let d = pattern_grid(&l, &a, &g, F, false).unwrap();
        assert_eq!(f.method, GridMethod::Fft);
        assert_eq!(f.u, d.u);
        for (x, y) in f.values.iter().zip(&d.values) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn planar_fft_is_product_of_linear_factors() {
        let d = lam() / 2.0;
        let l = ArrayLayout::rect_grid(8, 8, d, d).unwrap();
        let u0 = 40f64.to_radians().sin();
        let a = steered_excitation(&l, &[1.0; 64], u0, 0.0, F).unwrap();
        let g = pattern_grid(&l, &a, &GridSpec::Dft { pad: 4 }, F, true).unwrap();
        let direct = pattern_grid(&l, &a, &GridSpec::Dft { pad: 4 }, F, false).unwrap();
        let lx = ArrayLayout::linear(8, d).unwrap();
        let ax = steered_excitation(&lx, &[1.0; 8], u0, 0.0, F).unwrap();
        let ay = vec![C64::new(1.0, 0.0); 8];
        for (iv, &v) in g.v.iter().enumerate() {
            for (iu, &u) in g.u.iter().enumerate() {
                let prod = array_factor(&lx, &ax, u, 0.0, F) * array_factor(&lx, &ay, v, 0.0, F);
                assert!((g.at(iu, iv) - prod).norm() < 1e-10);
                assert!((g.at(iu, iv) - direct.at(iu, iv)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn irregular_fft_falls_back() {
        let l = ArrayLayout::custom(vec![(0.0, 0.0), (0.013, 0.004), (0.031, -0.01)]).unwrap();
        let g = pattern_grid(&l, &[C64::new(1.0, 0.0); 3], &GridSpec::Dft { pad: 4 }, F, true).unwrap();
        assert_eq!(g.method, GridMethod::Direct);
        assert_eq!(g.warnings.len(), 1);
    }

    #[test]
    fn embedded_pattern_with_coupling() {
        use crate::numerics::ComplexMatrix;
        let l = ArrayLayout::linear(2, lam() / 2.0).unwrap();
        let a = vec![C64::new(1.0, 0.0); 2];
        let s = ComplexMatrix::from_rows(&[
            vec![C64::new(0.0, 0.0), C64::new(0.3, 0.0)],
            vec![C64::new(0.3, 0.0), C64::new(0.0, 0.0)],
        ])
        .unwrap();
        let cos_elem: ElementPattern =
            Arc::new(|u: f64, v: f64| FarFieldSample { e_theta: C64::new((1.0 - u * u - v * v).max(0.0).sqrt(), 0.0), e_phi: C64::new(0.0, 0.0) });
        let cm = CouplingModel { s_matrix: Some(s), element: Some(cos_elem) };
        let e = array_factor_embedded(&l, &a, 0.0, 0.0, F, &cm).unwrap();
        assert!((e.e_theta.norm() - 2.0 * (1.0f64 - 0.09).sqrt()).abs() < 1e-12);
        let iso = array_factor_embedded(&l, &a, 0.0, 0.0, F, &CouplingModel::default()).unwrap();
        assert!((iso.e_theta.norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn layout_validation() {
        assert!(ArrayLayout::custom(vec![(0.0, 0.0), (0.0, 0.0)]).is_err());
        assert!(ArrayLayout::custom(vec![]).is_err());
        assert!(ArrayLayout::linear(0, 0.1).is_err());
    }
}
