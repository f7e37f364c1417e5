use super::{far_field, far_field_unchecked, wavenumber, RadiatorModel, FOLDED_IMPEDANCE_RATIO};
use crate::error::{Error, Result};
use crate::numerics::{cosine_integral, db10, integrate_breaks, QuadratureSpec, C64, EULER_GAMMA};
use crate::tline::eta0;
use std::f64::consts::PI;

/// Lowest value written to normalized patterns, dB.
pub const PATTERN_FLOOR_DB: f64 = -100.0;

const HALF_POWER_DB: f64 = 3.010_299_956_639_812;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternSample {
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub f_db: f64,
    pub e_theta: C64,
    pub e_phi: C64,
}

fn normalize(mut samples: Vec<PatternSample>) -> Result<Vec<PatternSample>> {
    let intensity = |s: &PatternSample| s.e_theta.norm_sqr() + s.e_phi.norm_sqr();
    let peak = samples.iter().map(intensity).fold(0.0, f64::max);
    if !(peak > 0.0) {
        return Err(Error::Degenerate("pattern is identically zero on the grid".into()));
    }
    for s in &mut samples {
        let rel = intensity(s) / peak;
        s.f_db = if rel > 0.0 { db10(rel).max(PATTERN_FLOOR_DB) } else { PATTERN_FLOOR_DB };
    }
    Ok(samples)
}

/// Normalized pattern along a cut at fixed `phi_deg`. Negative `θ` maps to
/// `(|θ|, φ + 180°)`, so a cut through the main beam of an aperture runs
/// over `[-90°, 90°]`.
pub fn pattern_cut(
    model: &RadiatorModel,
    phi_deg: f64,
    theta_start_deg: f64,
    theta_stop_deg: f64,
    n: usize,
    freq: f64,
) -> Result<Vec<PatternSample>> {
    if n < 2 {
        return Err(Error::domain("a cut needs at least two samples"));
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let t = theta_start_deg + (theta_stop_deg - theta_start_deg) * i as f64 / (n - 1) as f64;
        let (th, ph) = if t < 0.0 { (-t, phi_deg + 180.0) } else { (t, phi_deg) };
        let e = far_field(model, th.to_radians(), ph.to_radians(), freq)?;
        out.push(PatternSample { theta_deg: t, phi_deg, f_db: 0.0, e_theta: e.e_theta, e_phi: e.e_phi });
    }
    normalize(out)
}

/// Normalized pattern on the tensor grid `thetas × phis`, θ-major.
pub fn pattern_grid(model: &RadiatorModel, thetas_deg: &[f64], phis_deg: &[f64], freq: f64) -> Result<Vec<PatternSample>> {
    let mut out = Vec::with_capacity(thetas_deg.len() * phis_deg.len());
    for &t in thetas_deg {
        for &p in phis_deg {
            let e = far_field(model, t.to_radians(), p.to_radians(), freq)?;
            out.push(PatternSample { theta_deg: t, phi_deg: p, f_db: 0.0, e_theta: e.e_theta, e_phi: e.e_phi });
        }
    }
    normalize(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternMetrics {
    pub peak_angle_deg: f64,
    pub hpbw_deg: Option<f64>,
    /// Set when a −3 dB crossing is missing on either side of the peak.
    pub partial: bool,
    pub first_sidelobe_db: Option<f64>,
    pub first_sidelobe_angle_deg: Option<f64>,
    pub null_angles_deg: Vec<f64>,
}

fn crossing(a0: f64, f0: f64, a1: f64, f1: f64, level: f64) -> f64 {
    a0 + (level - f0) * (a1 - a0) / (f1 - f0)
}

/// Beam width, first sidelobe and nulls of a sampled cut in dB.
pub fn pattern_metrics(angles_deg: &[f64], f_db: &[f64]) -> Result<PatternMetrics> {
    if angles_deg.len() != f_db.len() {
        return Err(Error::Mismatch("angle and pattern lengths differ".into()));
    }
    let n = f_db.len();
    if n < 3 {
        return Err(Error::domain("need at least three samples"));
    }
    let ipk = (0..n).fold(0, |b, i| if f_db[i] > f_db[b] { i } else { b });
    let level = f_db[ipk] - HALF_POWER_DB;

    let mut left = None;
    for i in (0..ipk).rev() {
        if f_db[i] < level {
            left = Some(crossing(angles_deg[i], f_db[i], angles_deg[i + 1], f_db[i + 1], level));
            break;
        }
    }
    let mut right = None;
    for i in ipk + 1..n {
        if f_db[i] < level {
            right = Some(crossing(angles_deg[i - 1], f_db[i - 1], angles_deg[i], f_db[i], level));
            break;
        }
    }
    let hpbw = match (left, right) {
        (Some(l), Some(r)) => Some((r - l).abs()),
        (None, Some(r)) if ipk == 0 => Some(2.0 * (r - angles_deg[0]).abs()),
        _ => None,
    };
    let partial = left.is_none() || right.is_none();

    // main lobe extends to the first local minimum on each side
    let mut lo = ipk;
    while lo > 0 && f_db[lo - 1] <= f_db[lo] {
        lo -= 1;
    }
    let mut hi = ipk;
    while hi + 1 < n && f_db[hi + 1] <= f_db[hi] {
        hi += 1;
    }

    let mut sidelobe: Option<(f64, f64)> = None;
    let mut nulls = Vec::new();
    for i in 1..n - 1 {
        let (a, b, c) = (f_db[i - 1], f_db[i], f_db[i + 1]);
        if b <= a && b <= c && (b < a || b < c) {
            nulls.push(angles_deg[i]);
        }
        if (i < lo || i > hi) && b >= a && b >= c && (b > a || b > c) {
            if sidelobe.map_or(true, |(v, _)| b > v) {
                sidelobe = Some((b, angles_deg[i]));
            }
        }
    }
    Ok(PatternMetrics {
        peak_angle_deg: angles_deg[ipk],
        hpbw_deg: hpbw,
        partial,
        first_sidelobe_db: sidelobe.map(|(v, _)| v - f_db[ipk]),
        first_sidelobe_angle_deg: sidelobe.map(|(_, a)| a),
        null_angles_deg: nulls,
    })
}

fn theta_limit(model: &RadiatorModel) -> f64 {
    if model.upper_half_space_only() {
        PI / 2.0
    } else {
        PI
    }
}

fn golden_max(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    0.5 * (a + b)
}

/// Location and value of the maximum of `|E|²` over the radiating sphere.
fn peak(model: &RadiatorModel, freq: f64) -> (f64, f64, f64) {
    let tmax = theta_limit(model);
    let nt = 720;
    let np = if model.is_axisymmetric() { 1 } else { 72 };
    let intensity = |t: f64, p: f64| far_field_unchecked(model, t, p, freq).intensity();
    let (mut bt, mut bp, mut bv) = (0.0, 0.0, -1.0);
    for i in 0..=nt {
        let t = tmax * i as f64 / nt as f64;
        for j in 0..np {
            let p = 2.0 * PI * j as f64 / np as f64;
            let v = intensity(t, p);
            if v > bv {
                (bt, bp, bv) = (t, p, v);
            }
        }
    }
    let dt = tmax / nt as f64;
    let dp = 2.0 * PI / np as f64;
    for _ in 0..2 {
        bt = golden_max((bt - dt).max(0.0), (bt + dt).min(tmax), |t| intensity(t, bp));
        if np > 1 {
            bp = golden_max(bp - dp, bp + dp, |p| intensity(bt, p));
        }
    }
    let v = intensity(bt, bp);
    if v >= bv {
        (bt, bp, v)
    } else {
        (bt, bp, bv)
    }
}

/// `∬ f(θ,φ) sinθ dθ dφ` over the radiating sphere.
fn sphere_integral(
    model: &RadiatorModel,
    f: impl Fn(f64, f64) -> f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let tmax = theta_limit(model);
    let tb: Vec<f64> = (0..=64).map(|i| tmax * i as f64 / 64.0).collect();
    if model.is_axisymmetric() {
        let q = integrate_breaks(|t: f64| f(t, 0.0) * t.sin(), &tb, spec)?;
        return Ok(2.0 * PI * q.value);
    }
    let pb: Vec<f64> = (0..=8).map(|i| 2.0 * PI * i as f64 / 8.0).collect();
    let inner_spec = QuadratureSpec { abs_tol: spec.abs_tol * 0.1, rel_tol: spec.rel_tol * 0.1, ..*spec };
    let mut failure = None;
    let q = integrate_breaks(
        |t: f64| match integrate_breaks(|p: f64| f(t, p), &pb, &inner_spec) {
            Ok(q) => q.value * t.sin(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        &tb,
        spec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(q.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Directivity {
    pub d: f64,
    pub peak_theta: f64,
    pub peak_phi: f64,
}

impl Directivity {
    pub fn d_db(&self) -> f64 {
        db10(self.d)
    }
}

/// Peak directivity `4π max|E|² / ∬|E|² dΩ` by adaptive quadrature.
/// Ground-plane models integrate over the upper hemisphere only.
pub fn directivity(model: &RadiatorModel, freq: f64, spec: &QuadratureSpec) -> Result<Directivity> {
    model.validate()?;
    if !(freq > 0.0) {
        return Err(Error::domain("frequency must be positive"));
    }
    let (pt, pp, pv) = peak(model, freq);
    if !(pv > 0.0) {
        return Err(Error::Degenerate("model radiates no power".into()));
    }
    let total = sphere_integral(model, |t, p| far_field_unchecked(model, t, p, freq).intensity() / pv, spec)?;
    Ok(Directivity { d: 4.0 * PI / total, peak_theta: pt, peak_phi: pp })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiatedPower {
    pub p_t: f64,
    pub r_r: f64,
}

/// Total radiated power and the radiation resistance `P_t / (½|I|²)`.
///
/// Wire, loop and folded-dipole fields scale with `i_peak`; dipole and
/// aperture models carry their own source strength.
pub fn radiated_power_and_rr(model: &RadiatorModel, i_peak: f64, freq: f64, spec: &QuadratureSpec) -> Result<RadiatedPower> {
    model.validate()?;
    if !(i_peak > 0.0) || !(freq > 0.0) {
        return Err(Error::domain("current and frequency must be positive"));
    }
    let (_, _, pv) = peak(model, freq);
    if !(pv > 0.0) {
        return Err(Error::Degenerate("model radiates no power".into()));
    }
    let integral = sphere_integral(model, |t, p| far_field_unchecked(model, t, p, freq).intensity() / pv, spec)?;
    let mut p_t = integral * pv / (2.0 * eta0());
    if model.unit_current() {
        p_t *= i_peak * i_peak;
    }
    if matches!(model, RadiatorModel::FoldedDipole) {
        p_t *= FOLDED_IMPEDANCE_RATIO;
    }
    Ok(RadiatedPower { p_t, r_r: 2.0 * p_t / (i_peak * i_peak) })
}

/// Radiation resistance of the half-wave wire from the cosine integral.
pub fn half_wave_radiation_resistance() -> f64 {
    let ci = cosine_integral(2.0 * PI).expect("2π is in range");
    let ip = 0.5 * (EULER_GAMMA + (2.0 * PI).ln() - ci);
    eta0() * ip / (2.0 * PI)
}

/// Radiation resistance of a short dipole of length `l`: `(2π/3) η0 (l/λ)²`.
pub fn short_dipole_resistance(l: f64, freq: f64) -> f64 {
    let kl = wavenumber(freq) * l;
    eta0() * kl * kl / (6.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tline::C0;

    const F: f64 = 1e9;

    fn lam() -> f64 {
        C0 / F
    }

    fn metrics(model: &RadiatorModel, phi: f64, t0: f64, t1: f64, n: usize) -> PatternMetrics {
        let cut = pattern_cut(model, phi, t0, t1, n, F).unwrap();
        let a: Vec<f64> = cut.iter().map(|s| s.theta_deg).collect();
        let f: Vec<f64> = cut.iter().map(|s| s.f_db).collect();
        pattern_metrics(&a, &f).unwrap()
    }

    #[test]
    fn dipole_hpbw_and_directivity() {
        let m = RadiatorModel::ElectricDipole { i0l: 1e-3 };
        let pm = metrics(&m, 0.0, 0.0, 180.0, 3601);
        assert!((pm.hpbw_deg.unwrap() - 90.0).abs() < 0.01);
        let d = directivity(&m, F, &QuadratureSpec::default()).unwrap();
        assert!((d.d - 1.5).abs() < 1e-6);
    }

    #[test]
    fn short_dipole_resistance_matches_quadrature() {
        let l = 0.01 * lam();
        let m = RadiatorModel::ElectricDipole { i0l: l };
        let rp = radiated_power_and_rr(&m, 1.0, F, &QuadratureSpec::default()).unwrap();
        assert!((rp.r_r - short_dipole_resistance(l, F)).abs() < 1e-9);
        assert!((rp.r_r - 0.0789).abs() < 1e-3);
    }

    #[test]
    fn half_wave_wire() {
        let m = RadiatorModel::ThinWire { half_length: lam() / 4.0 };
        let rp = radiated_power_and_rr(&m, 2.0, F, &QuadratureSpec::default()).unwrap();
        assert!((rp.r_r - half_wave_radiation_resistance()).abs() < 1e-6);
        assert!((rp.r_r - 73.08).abs() < 0.01);
        let d = directivity(&m, F, &QuadratureSpec::default()).unwrap();
        assert!((d.d - 1.641).abs() < 1e-3);
        let pm = metrics(&m, 0.0, 0.0, 180.0, 3601);
        assert!((pm.hpbw_deg.unwrap() - 78.08).abs() < 0.02);
    }

    #[test]
    fn folded_dipole_quadruples_resistance() {
        let rp = radiated_power_and_rr(&RadiatorModel::FoldedDipole, 1.0, F, &QuadratureSpec::default()).unwrap();
        assert!((rp.r_r - 4.0 * half_wave_radiation_resistance()).abs() < 1e-5);
    }

    #[test]
    fn circular_aperture_sidelobes() {
        for (p, sll, hp) in [(0, -17.585, 29.476), (1, -24.662, 36.368), (2, -30.641, 42.18)] {
            let m = RadiatorModel::CircularAperture { radius: 10.0 * lam(), taper_p: p, e0: 1.0 };
            let pm = metrics(&m, 0.0, -30.0, 30.0, 12001);
            assert!((pm.first_sidelobe_db.unwrap() - sll).abs() < 0.005, "{p}: {:?}", pm.first_sidelobe_db);
            assert!((pm.hpbw_deg.unwrap() * 10.0 - hp).abs() < 0.01, "{p}: {:?}", pm.hpbw_deg);
        }
    }

    #[test]
    fn ground_plane_directivity() {
        // independent 2-D quadrature of the image-pair pattern
        for (h, expect) in [(0.1, 7.630620), (0.25, 5.603439), (0.5, 6.944645)] {
            let m = RadiatorModel::WireOverGround { half_length: lam() / 4.0, height: h * lam() };
            let d = directivity(&m, F, &QuadratureSpec::default()).unwrap();
            assert!((d.d - expect).abs() < 1e-4, "h={h}: {}", d.d);
        }
    }

    #[test]
    fn ground_relative_factor_bounded_by_four() {
        for i in 0..=90 {
            let t = (i as f64).to_radians();
            assert!(super::super::ground_factor_relative(0.37 * lam(), t, F) <= 4.0);
        }
    }

    #[test]
    fn metrics_flag_missing_crossing() {
        let a: Vec<f64> = (0..50).map(f64::from).collect();
        let f: Vec<f64> = a.iter().map(|x| -0.01 * x).collect();
        let pm = pattern_metrics(&a, &f).unwrap();
        assert!(pm.partial && pm.hpbw_deg.is_none());
    }
}
