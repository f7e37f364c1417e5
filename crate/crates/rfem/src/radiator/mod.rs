//! Analytic far-field models, pattern metrics, directivity, polarization,
//! microstrip cavity resonance and link budgets.
//!
//! Far fields are returned with the common factor `e^{-jk0r}/r` removed.
//! Angles are radians inside the library.

mod link;
mod pattern;
mod polarization;

pub use link::{
    antenna_noise_temperature, gain_from_effective_aperture, link_budget, microstrip_resonance,
    microstrip_zero, AntennaTemperature, LinkMode, LinkReport, LinkSpec, MicrostripResonance,
    MICROSTRIP_ZEROS,
};
pub use pattern::{
    directivity, half_wave_radiation_resistance, pattern_cut, pattern_grid, pattern_metrics,
    radiated_power_and_rr, short_dipole_resistance, Directivity, PatternMetrics, PatternSample, RadiatedPower,
    PATTERN_FLOOR_DB,
};
pub use polarization::{polarization_metrics, Hand, Polarization, Sense};

use crate::error::{Error, Result};
use crate::numerics::{bessel_j_unchecked, sinc, C64, J};
use crate::tline::{eta0, C0};
use std::f64::consts::PI;

/// Impedance of the folded half-wave dipole relative to the plain one.
pub const FOLDED_IMPEDANCE_RATIO: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiatorModel {
    /// Hertzian dipole along z with moment `I0 l` in A·m.
    ElectricDipole { i0l: f64 },
    /// Small loop in the xy-plane with moment `m = πa²I0` in A·m².
    MagneticDipole { m: f64 },
    /// Center-fed wire of length `2l` along z with sinusoidal current, unit peak.
    ThinWire { half_length: f64 },
    /// Horizontal wire along x at height `h` above a perfect ground plane.
    WireOverGround { half_length: f64, height: f64 },
    /// Half-wave folded dipole at the evaluation frequency.
    FoldedDipole,
    /// Loop of radius `a` in the xy-plane with unit uniform current.
    Loop { radius: f64 },
    /// Uniformly illuminated `a × b` aperture in the xy-plane.
    RectAperture { a: f64, b: f64, e0: f64 },
    /// Circular aperture with illumination `E0 [1 - (r/a)²]^p`.
    CircularAperture { radius: f64, taper_p: u32, e0: f64 },
    /// Circular patch in the cavity model, fed in the φ = 0 plane.
    MicrostripCircular { radius: f64, eps_r: f64, height: f64, mode_n: u32, mode_m: u32 },
}

/// Far-field angular factors; the radial component is zero by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldSample {
    pub e_theta: C64,
    pub e_phi: C64,
}

impl FarFieldSample {
    pub fn e_r(&self) -> C64 {
        C64::new(0.0, 0.0)
    }

    /// `|E|²` summed over both components.
    pub fn intensity(&self) -> f64 {
        self.e_theta.norm_sqr() + self.e_phi.norm_sqr()
    }

    /// Magnetic field from `H = u_r × E / Z0`, as `(H_θ, H_φ)`.
    pub fn h_field(&self) -> (C64, C64) {
        let z0 = eta0();
        (-self.e_phi / z0, self.e_theta / z0)
    }

    /// Radial power density times `r²`, W/sr.
    pub fn power_density(&self) -> f64 {
        self.intensity() / (2.0 * eta0())
    }
}

impl RadiatorModel {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64, name: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::domain(format!("{name} must be positive")))
            }
        };
        match *self {
            RadiatorModel::ElectricDipole { i0l } => positive(i0l, "dipole moment"),
            RadiatorModel::MagneticDipole { m } => positive(m, "loop moment"),
            RadiatorModel::ThinWire { half_length } => positive(half_length, "half length"),
            RadiatorModel::WireOverGround { half_length, height } => {
                positive(half_length, "half length")?;
                positive(height, "height")
            }
            RadiatorModel::FoldedDipole => Ok(()),
            RadiatorModel::Loop { radius } => positive(radius, "loop radius"),
            RadiatorModel::RectAperture { a, b, e0 } => {
                positive(a, "aperture width")?;
                positive(b, "aperture height")?;
                positive(e0, "aperture field")
            }
            RadiatorModel::CircularAperture { radius, taper_p, e0 } => {
                positive(radius, "aperture radius")?;
                positive(e0, "aperture field")?;
                if taper_p > 2 {
                    return Err(Error::domain(format!("taper order {taper_p} not in 0..=2")));
                }
                Ok(())
            }
            RadiatorModel::MicrostripCircular { radius, eps_r, height, mode_n, mode_m } => {
                positive(radius, "patch radius")?;
                positive(height, "substrate height")?;
                if !(eps_r >= 1.0) {
                    return Err(Error::domain("eps_r must be at least 1"));
                }
                microstrip_zero(mode_n, mode_m).map(|_| ())
            }
        }
    }

    /// True when the radiated power does not depend on φ.
    pub fn is_axisymmetric(&self) -> bool {
        matches!(
            self,
            RadiatorModel::ElectricDipole { .. }
                | RadiatorModel::MagneticDipole { .. }
                | RadiatorModel::ThinWire { .. }
                | RadiatorModel::FoldedDipole
                | RadiatorModel::Loop { .. }
                | RadiatorModel::CircularAperture { .. }
        )
    }

    /// Models backed by a ground plane radiate only for `θ ≤ π/2`.
    pub fn upper_half_space_only(&self) -> bool {
        matches!(self, RadiatorModel::WireOverGround { .. })
    }

    /// Models whose fields are given per ampere of feed current.
    pub fn unit_current(&self) -> bool {
        matches!(
            self,
            RadiatorModel::ThinWire { .. }
                | RadiatorModel::WireOverGround { .. }
                | RadiatorModel::FoldedDipole
                | RadiatorModel::Loop { .. }
        )
    }
}

pub fn wavenumber(freq: f64) -> f64 {
    2.0 * PI * freq / C0
}

/// Angular factor of a sinusoidal-current wire of half length `l` as a
/// function of the angle `psi` from the wire axis.
fn wire_factor(k0l: f64, psi_cos: f64, psi_sin: f64) -> f64 {
    if psi_sin < 1e-9 {
        return 0.0;
    }
    ((k0l * psi_cos).cos() - k0l.cos()) / psi_sin
}

/// Far field of `model` at `(theta, phi)` in radians.
pub fn far_field(model: &RadiatorModel, theta: f64, phi: f64, freq: f64) -> Result<FarFieldSample> {
    model.validate()?;
    if !(freq > 0.0) {
        return Err(Error::domain("frequency must be positive"));
    }
    if !(0.0..=PI + 1e-12).contains(&theta) {
        return Err(Error::domain(format!("theta {theta} outside [0, π]")));
    }
    if model.upper_half_space_only() && theta > PI / 2.0 + 1e-12 {
        return Err(Error::domain("ground-plane model queried below the ground plane"));
    }
    Ok(far_field_unchecked(model, theta, phi, freq))
}

pub(crate) fn far_field_unchecked(model: &RadiatorModel, theta: f64, phi: f64, freq: f64) -> FarFieldSample {
    let k0 = wavenumber(freq);
    let z0 = eta0();
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let zero = C64::new(0.0, 0.0);
    match *model {
        RadiatorModel::ElectricDipole { i0l } => FarFieldSample {
            e_theta: J * k0 * z0 * i0l * st / (4.0 * PI),
            e_phi: zero,
        },
        RadiatorModel::MagneticDipole { m } => FarFieldSample {
            e_theta: zero,
            e_phi: C64::from(k0 * k0 * z0 * m * st / (4.0 * PI)),
        },
        RadiatorModel::ThinWire { half_length } => FarFieldSample {
            e_theta: J * z0 / (2.0 * PI) * wire_factor(k0 * half_length, ct, st),
            e_phi: zero,
        },
        RadiatorModel::FoldedDipole => {
            let l = C0 / freq / 4.0;
            FarFieldSample {
                e_theta: J * z0 / (2.0 * PI) * wire_factor(k0 * l, ct, st),
                e_phi: zero,
            }
        }
        RadiatorModel::WireOverGround { half_length, height } => {
            // wire along x: cos ψ = sinθ cosφ
            let cpsi = st * cp;
            let spsi = (1.0 - cpsi * cpsi).max(0.0).sqrt();
            if spsi < 1e-9 {
                return FarFieldSample { e_theta: zero, e_phi: zero };
            }
            let a = J * z0 / (2.0 * PI) * wire_factor(k0 * half_length, cpsi, spsi) / spsi;
            let ground = 2.0 * J * (k0 * height * ct).sin();
            FarFieldSample {
                e_theta: -a * ct * cp * ground,
                e_phi: a * sp * ground,
            }
        }
        RadiatorModel::Loop { radius } => FarFieldSample {
            e_theta: zero,
            e_phi: C64::from(k0 * radius * z0 / 2.0 * bessel_j_unchecked(1, k0 * radius * st)),
        },
        RadiatorModel::RectAperture { a, b, e0 } => {
            let (u, v) = (st * cp, st * sp);
            let common = J * k0 * a * b * e0 / (4.0 * PI)
                * (1.0 + ct)
                * sinc(k0 * a * u / 2.0)
                * sinc(k0 * b * v / 2.0);
            FarFieldSample { e_theta: common * sp, e_phi: common * cp }
        }
        RadiatorModel::CircularAperture { radius, taper_p, e0 } => {
            let ua = k0 * radius * st;
            let common = J * k0 * radius * radius * e0 / 2.0 * (1.0 + ct) * taper_factor(taper_p, ua);
            FarFieldSample { e_theta: common * cp, e_phi: -common * sp }
        }
        RadiatorModel::MicrostripCircular { radius, eps_r, height, mode_n, .. } => {
            let n = mode_n as i32;
            let k = k0 * eps_r.sqrt();
            let x = k0 * radius * st;
            let jn = |order: i32, arg: f64| -> f64 {
                if order < 0 {
                    let v = bessel_j_unchecked(order.unsigned_abs(), arg);
                    if order % 2 == 0 { v } else { -v }
                } else {
                    bessel_j_unchecked(order as u32, arg)
                }
            };
            let (jp, jm) = (jn(n + 1, x), jn(n - 1, x));
            let common = J.powi(n) * height * radius * k0 * bessel_j_unchecked(mode_n, k * radius) / 2.0;
            let nphi = mode_n as f64 * phi;
            FarFieldSample {
                e_theta: common * nphi.cos() * (jp - jm),
                e_phi: common * ct * nphi.sin() * (jp + jm),
            }
        }
    }
}

/// `2^p p! J_{p+1}(u) / u^{p+1}`, continuous at `u = 0`.
fn taper_factor(p: u32, u: f64) -> f64 {
    let fact: f64 = (1..=p).map(f64::from).product();
    let scale = 2f64.powi(p as i32) * fact;
    if u.abs() < 1e-6 {
        return 1.0 / (2.0 * (p as f64 + 1.0));
    }
    scale * bessel_j_unchecked(p + 1, u) / u.powi(p as i32 + 1)
}

/// Ground-plane array factor normalized to the free-space wire: `4 sin²(k0 h cosθ)`.
pub fn ground_factor_relative(height: f64, theta: f64, freq: f64) -> f64 {
    4.0 * (wavenumber(freq) * height * theta.cos()).sin().powi(2)
}
