use crate::amplifier::{KB, T0};
use crate::error::{Error, Result};
use crate::numerics::{db10, integrate_2d, QuadratureSpec};
use crate::tline::C0;
use std::f64::consts::PI;

/// First zeros `K_nm` of `dJ_n(x)/dx`, keyed by `(n, m)`.
pub const MICROSTRIP_ZEROS: [((u32, u32), f64); 7] = [
    ((1, 1), 1.841),
    ((2, 1), 3.054),
    ((0, 2), 3.832),
    ((3, 1), 4.201),
    ((4, 1), 5.317),
    ((1, 2), 5.331),
    ((5, 1), 6.416),
];

pub fn microstrip_zero(n: u32, m: u32) -> Result<f64> {
    if (n, m) == (0, 1) {
        return Err(Error::Unsupported("mode (0,1) is the static solution with K = 0".into()));
    }
    MICROSTRIP_ZEROS
        .iter()
        .find(|(k, _)| *k == (n, m))
        .map(|&(_, z)| z)
        .ok_or_else(|| Error::Unsupported(format!("mode ({n},{m}) not in the zero table")))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicrostripResonance {
    pub f_nm: f64,
    pub effective_radius: f64,
    pub f_nm_effective: f64,
}

/// Cavity-model resonance of a circular patch, with and without the
/// fringing-field effective radius.
pub fn microstrip_resonance(radius: f64, eps_r: f64, height: f64, n: u32, m: u32) -> Result<MicrostripResonance> {
    if !(radius > 0.0) || !(height > 0.0) || !(eps_r >= 1.0) {
        return Err(Error::domain("patch radius and height must be positive, eps_r >= 1"));
    }
    let k = microstrip_zero(n, m)?;
    let f = |a: f64| k * C0 / (2.0 * PI * a * eps_r.sqrt());
    let ae = radius
        * (1.0 + 2.0 * height / (PI * radius * eps_r) * ((PI * radius / (2.0 * height)).ln() + 1.7726)).sqrt();
    Ok(MicrostripResonance { f_nm: f(radius), effective_radius: ae, f_nm_effective: f(ae) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkMode {
    Radio,
    Radar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSpec {
    pub p_t: f64,
    pub g_t: f64,
    pub g_r: f64,
    pub freq: f64,
    pub range: f64,
    /// Radar cross section, m²; used in radar mode.
    pub sigma_rcs: f64,
    pub p_r_min: f64,
    pub bandwidth: f64,
    /// Receiver noise factor (linear).
    pub nf: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkReport {
    pub p_r: f64,
    pub r_max: f64,
    pub noise_floor_dbm: f64,
    /// Received power over the receiver noise floor.
    pub snr_db: f64,
    /// Received power over the sensitivity `p_r_min`.
    pub margin_db: f64,
}

/// `G = 4π A_e / λ0²`.
pub fn gain_from_effective_aperture(a_e: f64, freq: f64) -> f64 {
    let lam = C0 / freq;
    4.0 * PI * a_e / (lam * lam)
}

/// Friis radio equation or monostatic radar equation (`G = g_t`, receive gain `g_r`).
pub fn link_budget(spec: &LinkSpec, mode: LinkMode) -> Result<LinkReport> {
    let s = spec;
    let mut required = vec![s.p_t, s.g_t, s.g_r, s.freq, s.range, s.p_r_min, s.bandwidth, s.nf];
    if mode == LinkMode::Radar {
        required.push(s.sigma_rcs);
    }
    if required.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::domain("link parameters must be positive"));
    }
    let lam = C0 / s.freq;
    let (p_r, r_max) = match mode {
        LinkMode::Radio => {
            let k = s.p_t * s.g_t * s.g_r * lam * lam / (4.0 * PI).powi(2);
            (k / (s.range * s.range), (k / s.p_r_min).sqrt())
        }
        LinkMode::Radar => {
            let k = s.p_t * s.g_t * s.g_r * s.sigma_rcs * lam * lam / (4.0 * PI).powi(3);
            (k / s.range.powi(4), (k / s.p_r_min).powf(0.25))
        }
    };
    let noise = KB * T0 * s.bandwidth * s.nf;
    Ok(LinkReport {
        p_r,
        r_max,
        noise_floor_dbm: db10(noise * 1e3),
        snr_db: db10(p_r / noise),
        margin_db: db10(p_r / s.p_r_min),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AntennaTemperature {
    pub t_a: f64,
    /// Factor applied to the gain so that it integrates to 4π.
    pub gain_scale: f64,
    pub warnings: Vec<String>,
}

/// `T_a = (1/4π) ∬ T(Ω) G(Ω) dΩ` with a normalization check on `G`.
pub fn antenna_noise_temperature(
    t_sky: impl Fn(f64, f64) -> f64,
    gain: impl Fn(f64, f64) -> f64,
    spec: &QuadratureSpec,
) -> Result<AntennaTemperature> {
    let sphere = |f: &dyn Fn(f64, f64) -> f64| {
        integrate_2d(|t: f64, p: f64| f(t, p) * t.sin(), 0.0, PI, 0.0, 2.0 * PI, spec).map(|q| q.value)
    };
    let norm = sphere(&|t, p| gain(t, p))?;
    if !(norm > 0.0) {
        return Err(Error::Degenerate("gain function integrates to zero".into()));
    }
    let scale = 4.0 * PI / norm;
    let mut warnings = Vec::new();
    if (scale - 1.0).abs() > 0.02 {
        warnings.push(format!("gain integrates to {norm:.4} instead of 4π; scaled by {scale:.4}"));
    }
    let weighted = sphere(&|t, p| t_sky(t, p) * gain(t, p))?;
    let gain_scale = if warnings.is_empty() { 1.0 } else { scale };
    Ok(AntennaTemperature { t_a: weighted * gain_scale / (4.0 * PI), gain_scale, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patch_resonance() {
        let r = microstrip_resonance(4.6e-3, 2.56, 0.5e-3, 1, 1).unwrap();
        assert!((r.f_nm / 1e9 - 11.935).abs() < 0.005);
        assert!(r.effective_radius > 4.6e-3 && r.f_nm_effective < r.f_nm);
        let r2 = microstrip_resonance(9.2e-3, 2.56, 0.5e-3, 1, 1).unwrap();
        assert!((r2.f_nm * 2.0 / r.f_nm - 1.0).abs() < 1e-12);
        assert!(microstrip_resonance(4.6e-3, 2.56, 0.5e-3, 0, 1).is_err());
        assert!(microstrip_resonance(4.6e-3, 2.56, 0.5e-3, 6, 1).is_err());
    }

    fn radio() -> LinkSpec {
        LinkSpec {
            p_t: 1e-3,
            g_t: 1.0,
            g_r: 1.0,
            freq: 2.44e9,
            range: 10.0,
            sigma_rcs: 1.0,
            p_r_min: 1e-10,
            bandwidth: 1e6,
            nf: 1.0,
        }
    }

    #[test]
    fn bluetooth_range() {
        let r = link_budget(&radio(), LinkMode::Radio).unwrap();
        assert!((r.r_max - 30.92).abs() < 0.01);
        let at_max = link_budget(&LinkSpec { range: r.r_max, ..radio() }, LinkMode::Radio).unwrap();
        assert!((at_max.p_r / 1e-10 - 1.0).abs() < 1e-12);
        assert!((r.noise_floor_dbm + 113.82).abs() < 0.01);
    }

    #[test]
    fn radar_range() {
        let g = gain_from_effective_aperture(1.0, 10e9);
        let spec = LinkSpec { p_t: 1e4, g_t: g, g_r: g, freq: 10e9, p_r_min: 1e-13, ..radio() };
        let r = link_budget(&spec, LinkMode::Radar).unwrap();
        assert!((r.r_max / 1e3 - 54.5).abs() < 0.1);
        let half = link_budget(&LinkSpec { range: 20.0, ..spec }, LinkMode::Radar).unwrap();
        let full = link_budget(&LinkSpec { range: 10.0, ..spec }, LinkMode::Radar).unwrap();
        assert!((full.p_r / half.p_r - 16.0).abs() < 1e-9);
    }

    #[test]
    fn noise_temperature_averages() {
        let spec = QuadratureSpec::default();
        let t = antenna_noise_temperature(|_, _| 100.0, |t, _| 1.5 * t.sin().powi(2), &spec).unwrap();
        assert!((t.t_a - 100.0).abs() < 1e-6 && t.warnings.is_empty());
        let half = antenna_noise_temperature(|t, _| if t < PI / 2.0 { 200.0 } else { 0.0 }, |_, _| 1.0, &spec).unwrap();
        assert!((half.t_a - 100.0).abs() < 1e-6);
        let bad = antenna_noise_temperature(|_, _| 50.0, |_, _| 2.0, &spec).unwrap();
        assert_eq!(bad.warnings.len(), 1);
        assert!((bad.t_a - 50.0).abs() < 1e-6);
    }

    #[test]
    fn dipole_over_cos_squared_sky() {
        // (1/4π) ∬ 300 cos²θ · 1.5 sin²θ dΩ = 300 · 1.5 · 4/15 / 2 = 60
        let spec = QuadratureSpec::default();
        let t = antenna_noise_temperature(|t, _| 300.0 * t.cos().powi(2), |t, _| 1.5 * t.sin().powi(2), &spec).unwrap();
        assert!((t.t_a - 60.0).abs() < 1e-6);
    }
}
