use super::{af_sum, check_excitation, grid_positions, wavenumber, ArrayLayout, LayoutKind};
use crate::error::{Error, Result};
use crate::numerics::{bessel_j_unchecked, db10, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SparseKind {
    RegularLinear { spacing: f64 },
    /// `count` must be a perfect square.
    RegularSquare { spacing: f64 },
    /// Vogel spiral: element `n` at radius `s√n`, angle `n·2π(1 − 1/φ)`,
    /// with `s = avg_spacing/√π` so each element covers `avg_spacing²`.
    Sunflower { avg_spacing: f64 },
    /// Uniform random positions in a disk of area `count·avg_spacing²`.
    Random { avg_spacing: f64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseLayout {
    pub layout: ArrayLayout,
    /// Average sidelobe level `1/count` for an irregular layout.
    pub predicted_sll: f64,
    pub predicted_sll_db: f64,
    pub warnings: Vec<String>,
}

pub fn sparse_layout(kind: SparseKind, count: usize) -> Result<SparseLayout> {
    if count == 0 {
        return Err(Error::domain("count must be positive"));
    }
    let layout = match kind {
        SparseKind::RegularLinear { spacing } => {
            let mut l = ArrayLayout::linear(count, spacing)?;
            l.kind = LayoutKind::SparseRegular { nx: count, ny: 1, dx: spacing, dy: spacing };
            l
        }
        SparseKind::RegularSquare { spacing } => {
            let n = (count as f64).sqrt().round() as usize;
            if n * n != count {
                return Err(Error::domain(format!("{count} is not a perfect square")));
            }
            let positions = grid_positions(n, n, spacing, spacing)?;
            ArrayLayout { positions, kind: LayoutKind::SparseRegular { nx: n, ny: n, dx: spacing, dy: spacing } }
        }
        SparseKind::Sunflower { avg_spacing } => {
            if !(avg_spacing > 0.0) {
                return Err(Error::domain("spacing must be positive"));
            }
            let s = avg_spacing / PI.sqrt();
            let golden = PI * (3.0 - 5f64.sqrt());
            let positions = (1..=count)
                .map(|n| {
                    let (r, a) = (s * (n as f64).sqrt(), n as f64 * golden);
                    (r * a.cos(), r * a.sin())
                })
                .collect();
            ArrayLayout { positions, kind: LayoutKind::Sunflower }
        }
        SparseKind::Random { avg_spacing, seed } => {
            if !(avg_spacing > 0.0) {
                return Err(Error::domain("spacing must be positive"));
            }
            let radius = avg_spacing * (count as f64 / PI).sqrt();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let positions = (0..count)
                .map(|_| {
                    let (r, a) = (radius * rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>());
                    (r * a.cos(), r * a.sin())
                })
                .collect();
            ArrayLayout { positions, kind: LayoutKind::Custom }
        }
    };
    let mut warnings = Vec::new();
    if count < 16 {
        warnings.push("average sidelobe prediction assumes at least 16 elements".into());
    }
    let predicted = 1.0 / count as f64;
    Ok(SparseLayout { layout, predicted_sll: predicted, predicted_sll_db: db10(predicted), warnings })
}

/// Mean of `|S|² / (Σ|a|)²` over `n_samples` directions drawn uniformly in
/// the unit `(u, v)` disk, skipping a disk of radius `exclusion` around the
/// beam at `(u0, v0)`.
#[allow(clippy::too_many_arguments)]
pub fn average_sidelobe_level(
    layout: &ArrayLayout,
    a: &[C64],
    freq: f64,
    u0: f64,
    v0: f64,
    exclusion: f64,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    check_excitation(layout, a)?;
    if n_samples == 0 || !(exclusion >= 0.0) || exclusion >= 1.0 {
        return Err(Error::domain("need samples and an exclusion radius below 1"));
    }
    let k0 = wavenumber(freq);
    let peak: f64 = a.iter().map(|x| x.norm()).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut acc, mut taken) = (0.0, 0);
    while taken < n_samples {
        let (r, t) = (rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>());
        let (u, v) = (r * t.cos(), r * t.sin());
        if (u - u0).hypot(v - v0) < exclusion {
            continue;
        }
        acc += af_sum(&layout.positions, a, k0, u, v).norm_sqr();
        taken += 1;
    }
    Ok(acc / (n_samples as f64 * peak * peak))
}

/// Default subtended half-angle of the reflector.
pub const FPA_DEFAULT_PSI0: f64 = PI / 4.0;

/// Normalized focal-plane field `2J1(x)/x`, `x = k0 r sinΨ0`.
pub fn fpa_focal_field(r: f64, freq: f64, psi0: f64) -> Result<f64> {
    if !(r >= 0.0) || !(freq > 0.0) {
        return Err(Error::domain("radius must be non-negative and frequency positive"));
    }
    let x = wavenumber(freq) * r * psi0.sin();
    Ok(if x.abs() < 1e-8 { 1.0 - x * x / 8.0 } else { 2.0 * bessel_j_unchecked(1, x) / x })
}

/// Fraction of focal-plane power inside radius `r_p`:
/// `1 − J0²(x) − J1²(x)`, `x = k0 r_p sinΨ0`.
pub fn fpa_efficiency(r_p: f64, freq: f64, psi0: f64) -> Result<f64> {
    if !(r_p >= 0.0) || !(freq > 0.0) {
        return Err(Error::domain("radius must be non-negative and frequency positive"));
    }
    let x = wavenumber(freq) * r_p * psi0.sin();
    Ok(1.0 - bessel_j_unchecked(0, x).powi(2) - bessel_j_unchecked(1, x).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Squint {
    pub u: f64,
    /// `None` outside visible space.
    pub theta_deg: Option<f64>,
    pub visible: bool,
}

/// Beam position `u = u0 f0/f` of a phase-shifter-steered array at `f`.
pub fn beam_squint(u0: f64, f0: f64, f: f64) -> Result<Squint> {
    if !(f > 0.0) || !(f0 > 0.0) || !(u0.abs() <= 1.0) {
        return Err(Error::domain("frequencies must be positive and |u0| <= 1"));
    }
    let u = u0 * f0 / f;
    let visible = u.abs() <= 1.0;
    Ok(Squint { u, theta_deg: visible.then(|| u.asin().to_degrees()), visible })
}

/// Half-power beam width scanned to `theta0`, `HPBW(0)/cosθ0`.
pub fn broadened_hpbw(hpbw_broadside: f64, theta0: f64) -> Result<f64> {
    let c = theta0.cos();
    if !(c > 1e-12) {
        return Err(Error::domain("scan angle must lie inside (−90°, 90°)"));
    }
    Ok(hpbw_broadside / c)
}

#[cfg(test)]
mod tests {
    use super::super::{cut_metrics, grating_lobes, pattern_grid, steered_excitation, GridSpec};
    use super::*;
    use crate::numerics::{integrate_adaptive, QuadratureSpec};
    use crate::tline::C0;

    const F: f64 = 1e9;

    fn lam() -> f64 {
        C0 / F
    }

    #[test]
    fn sunflower_spacing() {
        let s = sparse_layout(SparseKind::Sunflower { avg_spacing: 2.0 * lam() }, 289).unwrap();
        let p = &s.layout.positions;
        let mut dmin = f64::INFINITY;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                dmin = dmin.min((p[i].0 - p[j].0).hypot(p[i].1 - p[j].1));
            }
        }
        assert!(dmin >= lam(), "{}", dmin / lam());
        assert!((s.predicted_sll_db - db10(1.0 / 289.0)).abs() < 1e-12);
        let k = sparse_layout(SparseKind::Random { avg_spacing: lam(), seed: 1 }, 1000).unwrap();
        assert!((k.predicted_sll_db + 30.0).abs() < 1e-12);
    }

    #[test]
    fn regular_sparse_has_grating_lobes() {
        let s = sparse_layout(SparseKind::RegularLinear { spacing: 2.0 * lam() }, 32).unwrap();
        let a = vec![C64::new(1.0, 0.0); 32];
        let g = pattern_grid(&s.layout, &a, &GridSpec::Dft { pad: 8 }, F, true).unwrap();
        let lobes = grating_lobes(2.0, None, 0.0, 0.0).unwrap();
        for (u, _) in lobes {
            let i = g.u.iter().position(|x| (x - u).abs() < 1e-9).unwrap();
            assert!((g.at(i, 0).norm() - 32.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sunflower_peak_sidelobe() {
        // numpy grid evaluation of the same spiral: −14.3294 dB
        let s = sparse_layout(SparseKind::Sunflower { avg_spacing: 2.0 * lam() }, 289).unwrap();
        let u0 = 30f64.to_radians().sin();
        let a = steered_excitation(&s.layout, &vec![1.0; 289], u0, 0.0, F).unwrap();
        let n = 401;
        let axis: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
        let g = pattern_grid(&s.layout, &a, &GridSpec::Axes { u: axis.clone(), v: axis.clone() }, F, false).unwrap();
        let mut worst = f64::NEG_INFINITY;
        for (iv, &v) in axis.iter().enumerate() {
            for (iu, &u) in axis.iter().enumerate() {
                if u * u + v * v <= 1.0 && (u - u0).hypot(v) > 0.05 {
                    worst = worst.max(crate::numerics::db20(g.at(iu, iv).norm() / 289.0));
                }
            }
        }
        assert!((worst + 14.3294).abs() < 1e-3, "{worst}");
    }

    #[test]
    fn random_layout_average_sll() {
        let s = sparse_layout(SparseKind::Random { avg_spacing: 2.0 * lam(), seed: 3 }, 400).unwrap();
        let a = vec![C64::new(1.0, 0.0); 400];
        let sll = average_sidelobe_level(&s.layout, &a, F, 0.0, 0.0, 0.05, 3000, 5).unwrap();
        assert!((db10(sll) - db10(1.0 / 400.0)).abs() < 0.5, "{}", db10(sll));
    }

    #[test]
    fn focal_field_and_efficiency() {
        assert_eq!(fpa_focal_field(0.0, F, FPA_DEFAULT_PSI0).unwrap(), 1.0);
        let null = 3.831_705_970_207_512 / (2.0 * PI * FPA_DEFAULT_PSI0.sin()) * lam();
        assert!((null / lam() - 0.8624).abs() < 1e-4);
        assert!(fpa_focal_field(null, F, FPA_DEFAULT_PSI0).unwrap().abs() < 1e-12);
        let eta = fpa_efficiency(null, F, FPA_DEFAULT_PSI0).unwrap();
        assert!((eta - 0.838).abs() < 5e-4, "{eta}");
        // radial quadrature of |E|² r dr against the total 2/(k0 sinΨ0)²
        let spec = QuadratureSpec::default();
        let q = integrate_adaptive(|r: f64| fpa_focal_field(r, F, FPA_DEFAULT_PSI0).unwrap().powi(2) * r, 0.0, null, &spec).unwrap();
        let total = 2.0 / (crate::array::wavenumber(F) * FPA_DEFAULT_PSI0.sin()).powi(2);
        assert!((q.value / total - eta).abs() < 1e-8);
        let mut prev = 0.0;
        for i in 0..200 {
            let e = fpa_efficiency(i as f64 * 0.05 * lam(), F, FPA_DEFAULT_PSI0).unwrap();
            assert!(e >= prev - 1e-12);
            prev = e;
        }
        assert!(prev > 0.98);
        assert!(fpa_efficiency(2000.0 * lam(), F, FPA_DEFAULT_PSI0).unwrap() > 0.999);
    }

    #[test]
    fn squint_example() {
        let u0 = 40f64.to_radians().sin();
        assert_eq!(beam_squint(u0, 12e9, 12e9).unwrap().u, u0);
        let s = beam_squint(u0, 12e9, 14e9).unwrap();
        assert!((s.u - 0.551).abs() < 5e-4);
        assert!((s.theta_deg.unwrap() - 33.4).abs() < 0.05);
        assert!(!beam_squint(0.9, 12e9, 8e9).unwrap().visible);
        // pattern maximum of the phase-steered 64-element array at 14 GHz
        let l = ArrayLayout::linear(64, C0 / 12e9 / 2.0).unwrap();
        let a = steered_excitation(&l, &[1.0; 64], u0, 0.0, 12e9).unwrap();
        let m = cut_metrics(&l, &a, 0.0, 90001, 14e9).unwrap();
        assert!((m.peak_angle_deg - s.theta_deg.unwrap()).abs() < 0.005);
        assert!((broadened_hpbw(1.0, PI / 3.0).unwrap() - 2.0).abs() < 1e-12);
    }
}
