use super::{check_excitation, wavenumber, ArrayLayout};
use crate::amplifier::KB;
use crate::error::{Error, Result};
use crate::numerics::{db10, sinc, ComplexMatrix, C64};

/// Grating-lobe positions `(u0 + i/dx, v0 + j/dy)` inside the closed unit
/// disk, spacings in wavelengths. `dy_wl = None` for a linear array.
pub fn grating_lobes(dx_wl: f64, dy_wl: Option<f64>, u0: f64, v0: f64) -> Result<Vec<(f64, f64)>> {
    if !(dx_wl > 0.0) || dy_wl.is_some_and(|d| !(d > 0.0)) {
        return Err(Error::domain("spacings must be positive"));
    }
    let span = |d: f64| (2.0 * d).ceil() as i64 + 1;
    let (ni, nj) = (span(dx_wl), dy_wl.map_or(0, span));
    let mut lobes = Vec::new();
    for i in -ni..=ni {
        for j in -nj..=nj {
            if i == 0 && j == 0 {
                continue;
            }
            let u = u0 + i as f64 / dx_wl;
            let v = v0 + dy_wl.map_or(0.0, |d| j as f64 / d);
            if u * u + v * v <= 1.0 + 1e-12 {
                lobes.push((u, v));
            }
        }
    }
    Ok(lobes)
}

/// Largest spacing in wavelengths free of grating lobes up to `|θ| = theta_max`.
pub fn max_spacing(theta_max: f64) -> f64 {
    1.0 / (1.0 + theta_max.sin().abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaperReport {
    pub d: f64,
    pub d_db: f64,
    pub eta_tap: f64,
}

/// Directivity of isotropic elements with a co-phased beam peak,
/// `(Σ|a|)² / ΣΣ a_k a_l* sinc(k0 |r_k − r_l|)`, and the taper efficiency
/// `(Σ|a|)² / (K Σ|a|²)`.
pub fn directivity_taper_efficiency(layout: &ArrayLayout, a: &[C64], freq: f64) -> Result<TaperReport> {
    check_excitation(layout, a)?;
    let k0 = wavenumber(freq);
    let p = &layout.positions;
    let sum_abs: f64 = a.iter().map(|x| x.norm()).sum();
    let sum_sq: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let mut denom = 0.0;
    for k in 0..p.len() {
        denom += a[k].norm_sqr();
        for l in k + 1..p.len() {
            let r = ((p[k].0 - p[l].0).powi(2) + (p[k].1 - p[l].1).powi(2)).sqrt();
            denom += 2.0 * (a[k] * a[l].conj()).re * sinc(k0 * r);
        }
    }
    let d = sum_abs * sum_abs / denom;
    Ok(TaperReport { d, d_db: db10(d), eta_tap: sum_abs * sum_abs / (a.len() as f64 * sum_sq) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArraySnr {
    pub snr: f64,
    pub snr_db: f64,
    /// Output noise referred to the antenna, as temperatures.
    pub antenna_noise_k: f64,
    pub electronics_noise_k: f64,
}

/// Output SNR of `k` receive chains with available gain `g_av`, noise factor
/// `nf`, antenna temperature `t_a` and per-element signal `s_a`.
pub fn array_snr(k: usize, g_av: f64, nf: f64, t_a: f64, t0: f64, bandwidth: f64, s_a: f64) -> Result<ArraySnr> {
    if k == 0 || [g_av, t0, bandwidth, s_a].iter().any(|v| !(*v > 0.0)) || !(nf >= 1.0) || !(t_a >= 0.0) {
        return Err(Error::domain("array SNR inputs must be positive with nf >= 1"));
    }
    let kf = k as f64;
    let signal = kf * g_av * s_a;
    let noise = KB * t_a * bandwidth * kf * g_av + KB * t0 * bandwidth * (nf - 1.0) * g_av;
    let snr = signal / noise;
    Ok(ArraySnr { snr, snr_db: db10(snr), antenna_noise_k: t_a, electronics_noise_k: t0 * (nf - 1.0) / kf })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActiveElement {
    /// `None` for an unexcited element.
    pub r_act: Option<C64>,
    /// `1 − |R_act|²`.
    pub scan_loss: Option<f64>,
    pub scan_loss_db: Option<f64>,
    /// `None` when `R_act = 1`.
    pub z_act: Option<C64>,
    /// `√(1 − |R_act|²)` applied to the element pattern.
    pub pattern_scale: Option<f64>,
}

/// Active reflection `R_j = (1/a_j) Σ_i S_ji a_i` for the excitation `a`
/// (equal to the `S_ij` form for reciprocal arrays) and the active input
/// impedance against port impedance `z0`.
pub fn active_reflection(s: &ComplexMatrix, a: &[C64], z0: f64) -> Result<Vec<ActiveElement>> {
    if !s.is_square() || s.rows() != a.len() {
        return Err(Error::Mismatch(format!("{}x{} S matrix for {} elements", s.rows(), s.cols(), a.len())));
    }
    if !(z0 > 0.0) {
        return Err(Error::domain("port impedance must be positive"));
    }
    Ok((0..a.len())
        .map(|j| {
            if a[j].norm() == 0.0 {
                return ActiveElement { r_act: None, scan_loss: None, scan_loss_db: None, z_act: None, pattern_scale: None };
            }
            let r: C64 = s.row(j).iter().zip(a).map(|(sji, ai)| sji * ai).sum::<C64>() / a[j];
            let loss = 1.0 - r.norm_sqr();
            let one = C64::new(1.0, 0.0);
            ActiveElement {
                r_act: Some(r),
                scan_loss: Some(loss),
                scan_loss_db: (loss > 0.0).then(|| db10(loss)),
                z_act: ((one - r).norm() > 1e-15).then(|| z0 * (one + r) / (one - r)),
                pattern_scale: Some(loss.max(0.0).sqrt()),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    /// Look-up table `c_k = a_k / b_k`; `None` where `b_k = 0`.
    pub c: Vec<Option<C64>>,
    /// Reconstructed far-field transfer `ã_k = b̃_k c_k`.
    pub a_tilde: Vec<Option<C64>>,
    /// Elements whose off-line reference vanished.
    pub failed: Vec<usize>,
}

/// Off-line look-up table from far-field (`a`) and calibration-source (`b`)
/// responses, applied to on-line calibration measurements `b_online`.
pub fn calibration(a: &[C64], b: &[C64], b_online: &[C64]) -> Result<Calibration> {
    if a.len() != b.len() || b.len() != b_online.len() {
        return Err(Error::Mismatch("calibration vectors differ in length".into()));
    }
    let c: Vec<Option<C64>> = a.iter().zip(b).map(|(&ak, &bk)| (bk.norm() > 0.0).then(|| ak / bk)).collect();
    let a_tilde = c.iter().zip(b_online).map(|(ck, &bt)| ck.map(|ck| bt * ck)).collect();
    let failed = c.iter().enumerate().filter(|(_, ck)| ck.is_none()).map(|(i, _)| i).collect();
    Ok(Calibration { c, a_tilde, failed })
}
