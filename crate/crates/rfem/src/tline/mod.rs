//! Transmission-line primitives: propagation constants, terminated lines,
//! standing waves, quarter-wave transformers, lossy power flow, parallel-plate
//! lines and Smith-chart mappings.

mod smith;

pub use smith::{constant_circle, smith_from_gamma, smith_from_z, Circle, CircleKind, SmithPoint};

use crate::error::{Error, Result};
use crate::numerics::C64;
use std::f64::consts::PI;

pub const C0: f64 = 299_792_458.0;
pub const MU0: f64 = 1.256_637_062_12e-6;
pub const EPS0: f64 = 8.854_187_8128e-12;

/// Free-space wave impedance.
pub fn eta0() -> f64 {
    (MU0 / EPS0).sqrt()
}

/// An impedance that may be an ideal open circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Impedance {
    Finite(C64),
    Infinite,
}

impl Impedance {
    pub fn real(r: f64) -> Self {
        Impedance::Finite(C64::new(r, 0.0))
    }

    pub fn finite(self) -> Option<C64> {
        match self {
            Impedance::Finite(z) => Some(z),
            Impedance::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Impedance::Infinite)
    }

    /// Reflection coefficient against `z_ref`; an open gives exactly +1.
    pub fn gamma(&self, z_ref: C64) -> C64 {
        match *self {
            Impedance::Finite(z) => (z - z_ref) / (z + z_ref),
            Impedance::Infinite => C64::new(1.0, 0.0),
        }
    }
}

impl From<C64> for Impedance {
    fn from(z: C64) -> Self {
        Impedance::Finite(z)
    }
}

/// Distributed line constants per metre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rlgc {
    pub r: f64,
    pub l: f64,
    pub g: f64,
    pub c: f64,
}

/// Modal description of a line at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub gamma: C64,
    pub z0: C64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagation {
    pub gamma: C64,
    pub z0: C64,
    pub wavelength: f64,
    pub phase_velocity: f64,
}

impl Propagation {
    pub fn line(&self) -> Line {
        Line { gamma: self.gamma, z0: self.z0 }
    }
}

/// γ = √((R+jωL)(G+jωC)) on the branch with non-negative real part, and
/// Z0 = (R+jωL)/γ.
pub fn propagation_from_rlgc(p: &Rlgc, freq: f64) -> Result<Propagation> {
    if !(p.l > 0.0) || !(p.c > 0.0) {
        return Err(Error::domain("L and C must be positive"));
    }
    if p.r < 0.0 || p.g < 0.0 {
        return Err(Error::domain("R and G must be non-negative"));
    }
    if !(freq > 0.0) {
        return Err(Error::domain("frequency must be positive"));
    }
    let w = 2.0 * PI * freq;
    let zs = C64::new(p.r, w * p.l);
    let yp = C64::new(p.g, w * p.c);
    let mut prod = zs * yp;
    // keep lossless lines on the +jβ side of the branch cut
    if prod.im == 0.0 {
        prod.im = 0.0;
    }
    let gamma = prod.sqrt();
    let z0 = zs / gamma;
    Ok(Propagation {
        gamma,
        z0,
        wavelength: 2.0 * PI / gamma.im,
        phase_velocity: w / gamma.im,
    })
}

fn snap(x: C64) -> C64 {
    let f = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    C64::new(f(x.re), f(x.im))
}

impl Line {
    pub fn new(gamma: C64, z0: C64) -> Result<Self> {
        if gamma.re < 0.0 {
            return Err(Error::domain("Re(gamma) must be non-negative"));
        }
        if !(z0.re > 0.0) {
            return Err(Error::domain("Re(z0) must be positive"));
        }
        Ok(Self { gamma, z0 })
    }

    pub fn lossless(z0: f64, beta: f64) -> Self {
        Self { gamma: C64::new(0.0, beta), z0: C64::new(z0, 0.0) }
    }

    pub fn from_rlgc(p: &Rlgc, freq: f64) -> Result<Self> {
        Ok(propagation_from_rlgc(p, freq)?.line())
    }

    pub fn alpha(&self) -> f64 {
        self.gamma.re
    }

    pub fn beta(&self) -> f64 {
        self.gamma.im
    }

    pub fn wavelength(&self) -> f64 {
        2.0 * PI / self.gamma.im
    }

    /// Input impedance of a line of `length` terminated in `load`.
    pub fn input_impedance(&self, load: Impedance, length: f64) -> Result<Impedance> {
        if length < 0.0 {
            return Err(Error::domain("line length must be non-negative"));
        }
        let gl = self.gamma * length;
        let ch = snap(gl.cosh());
        let sh = snap(gl.sinh());
        let z0 = self.z0;
        let (num, den) = match load {
            Impedance::Finite(zl) => (z0 * (zl * ch + z0 * sh), z0 * ch + zl * sh),
            Impedance::Infinite => (z0 * ch, sh),
        };
        if den.norm() == 0.0 {
            return Ok(Impedance::Infinite);
        }
        Ok(Impedance::Finite(num / den))
    }

    /// Reflection coefficient a distance `l` from a load with `gamma_load`.
    pub fn gamma_at_distance(&self, gamma_load: C64, l: f64) -> Result<C64> {
        gamma_at_distance(gamma_load, self.gamma, l)
    }

    /// Incident, delivered and dissipated power for a forward amplitude
    /// `v0_plus` referred to the load plane. Z0 is taken as real.
    pub fn power_flow(&self, load: Impedance, length: f64, v0_plus: C64) -> Result<PowerFlow> {
        if length < 0.0 {
            return Err(Error::domain("line length must be non-negative"));
        }
        let z0 = self.z0.re;
        if !(z0 > 0.0) {
            return Err(Error::domain("Re(z0) must be positive"));
        }
        let g2 = load.gamma(C64::new(z0, 0.0)).norm_sqr();
        let k = v0_plus.norm_sqr() / (2.0 * z0);
        let up = (2.0 * self.alpha() * length).exp();
        let down = (-2.0 * self.alpha() * length).exp();
        Ok(PowerFlow {
            p_in: k * (up - g2 * down),
            p_load: k * (1.0 - g2),
            p_loss: k * ((up - 1.0) + g2 * (1.0 - down)),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFlow {
    pub p_in: f64,
    pub p_load: f64,
    pub p_loss: f64,
}

pub fn gamma_at_distance(gamma_load: C64, gamma_prop: C64, l: f64) -> Result<C64> {
    if l < 0.0 {
        return Err(Error::domain("distance must be non-negative"));
    }
    Ok(gamma_load * (-2.0 * gamma_prop * l).exp())
}

/// Standing-wave figures of a mismatch. Infinite entries mark |Γ| = 1 or Γ = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub gamma: C64,
    pub vswr: f64,
    pub return_loss_db: f64,
    pub transmission: C64,
    pub insertion_loss_db: f64,
}

pub fn reflection_quantities(z: Impedance, z_ref: C64) -> Result<Reflection> {
    if !(z_ref.re > 0.0) {
        return Err(Error::domain("Re(z_ref) must be positive"));
    }
    let gamma = z.gamma(z_ref);
    let m = gamma.norm();
    let full = (1.0 - m).abs() < 1e-12;
    let vswr = if full || m > 1.0 { f64::INFINITY } else { (1.0 + m) / (1.0 - m) };
    let return_loss_db = if m == 0.0 { f64::INFINITY } else { -20.0 * m.log10() };
    let insertion_loss_db = if full { f64::INFINITY } else { -10.0 * (1.0 - m * m).log10() };
    Ok(Reflection { gamma, vswr, return_loss_db, transmission: 1.0 + gamma, insertion_loss_db })
}

/// λ/4 transformer between a resistive load and a real system impedance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarterWave {
    pub z1: f64,
    pub r_load: f64,
    pub z0: f64,
}

pub fn quarter_wave_design(load: C64, z0_system: f64) -> Result<QuarterWave> {
    if load.im != 0.0 {
        return Err(Error::domain(
            "quarter-wave transformer needs a resistive load; cancel the reactance with a stub or series element first",
        ));
    }
    if !(load.re > 0.0) || !(z0_system > 0.0) {
        return Err(Error::domain("load and system impedance must be positive"));
    }
    Ok(QuarterWave { z1: (z0_system * load.re).sqrt(), r_load: load.re, z0: z0_system })
}

impl QuarterWave {
    /// |Γ| seen from the system line at normalized frequency f/f0.
    pub fn gamma_mag(&self, f_ratio: f64) -> f64 {
        let line = Line::lossless(self.z1, PI / 2.0 * f_ratio);
        let zin = line.input_impedance(Impedance::real(self.r_load), 1.0).expect("positive length");
        zin.gamma(C64::new(self.z0, 0.0)).norm()
    }

    pub fn sweep(&self, f_ratios: &[f64]) -> Vec<(f64, f64)> {
        f_ratios.iter().map(|&f| (f, self.gamma_mag(f))).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParallelPlate {
    pub z0: f64,
    pub l: f64,
    pub c: f64,
    pub beta: f64,
    pub width: f64,
    pub height: f64,
    pub warning: Option<String>,
}

impl ParallelPlate {
    pub fn phase_velocity(&self) -> f64 {
        1.0 / (self.l * self.c).sqrt()
    }

    /// Transverse field between the plates for line voltage `v0`.
    pub fn e_field(&self, v0: C64) -> C64 {
        v0 / self.height
    }

    pub fn h_field(&self, v0: C64) -> C64 {
        v0 / (self.z0 * self.width)
    }
}

pub fn parallel_plate_params(width: f64, height: f64, eps_r: f64, freq: f64) -> Result<ParallelPlate> {
    if !(width > 0.0) || !(height > 0.0) || !(eps_r > 0.0) || !(freq > 0.0) {
        return Err(Error::domain("plate dimensions, permittivity and frequency must be positive"));
    }
    let eps = EPS0 * eps_r;
    let eta = (MU0 / eps).sqrt();
    let warning = (width < 10.0 * height)
        .then(|| format!("w/d = {:.2} is not large; fringing is ignored", width / height));
    Ok(ParallelPlate {
        z0: eta * height / width,
        l: MU0 * height / width,
        c: eps * width / height,
        beta: 2.0 * PI * freq * (eps * MU0).sqrt(),
        width,
        height,
        warning,
    })
}

/// jX for a lossless short-circuited stub.
pub fn short_stub(z0: f64, beta_l: f64) -> Impedance {
    Line::lossless(z0, beta_l).input_impedance(Impedance::real(0.0), 1.0).expect("positive length")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn lossy_line_example() {
        let p = Rlgc { r: 5.0, l: 0.2e-6, g: 0.01, c: 300e-12 };
        let prop = propagation_from_rlgc(&p, 500e6).unwrap();
        assert!((prop.gamma.re - 0.23).abs() < 0.005, "{}", prop.gamma);
        assert!((prop.gamma.im - 24.3).abs() < 0.05);
        let lossless = propagation_from_rlgc(&Rlgc { r: 0.0, g: 0.0, ..p }, 500e6).unwrap();
        assert_eq!(lossless.gamma.re, 0.0);
        assert!((lossless.gamma.im - 24.3).abs() < 0.05);
        assert!((lossless.z0.re - 25.82).abs() < 0.005);
        assert_eq!(lossless.z0.im, 0.0);
    }

    #[test]
    fn rejects_bad_constants() {
        let p = Rlgc { r: 0.0, l: 0.0, g: 0.0, c: 1e-12 };
        assert!(propagation_from_rlgc(&p, 1e9).is_err());
    }

    #[test]
    fn short_eighth_wave_is_jz0() {
        let line = Line::lossless(50.0, 2.0 * PI);
        let z = line.input_impedance(Impedance::real(0.0), 0.125).unwrap().finite().unwrap();
        assert!((z - c(0.0, 50.0)).norm() < 1e-12);
    }

    #[test]
    fn quarter_wave_short_is_open() {
        let line = Line::lossless(50.0, 2.0 * PI);
        assert_eq!(line.input_impedance(Impedance::real(0.0), 0.25).unwrap(), Impedance::Infinite);
        let open = line.input_impedance(Impedance::Infinite, 0.25).unwrap().finite().unwrap();
        assert!(open.norm() < 1e-12);
    }

    #[test]
    fn half_wave_repeats_load() {
        let line = Line::lossless(50.0, 2.0 * PI);
        let zl = c(23.0, -71.0);
        let z = line.input_impedance(zl.into(), 0.5).unwrap().finite().unwrap();
        assert!((z - zl).norm() < 1e-10);
    }

    #[test]
    fn quarter_wave_transformer() {
        let q = quarter_wave_design(c(100.0, 0.0), 50.0).unwrap();
        assert!((q.z1 - 70.71).abs() < 0.005);
        assert!(q.gamma_mag(1.0) < 1e-12);
        assert!((q.gamma_mag(2.0) - 1.0 / 3.0).abs() < 1e-12);
        let flat = quarter_wave_design(c(50.0, 0.0), 50.0).unwrap();
        assert!(flat.gamma_mag(0.37) < 1e-15);
        assert!(quarter_wave_design(c(100.0, 10.0), 50.0).is_err());
    }

    #[test]
    fn reflection_figures() {
        let m = reflection_quantities(Impedance::real(50.0), c(50.0, 0.0)).unwrap();
        assert_eq!(m.vswr, 1.0);
        assert!(m.return_loss_db.is_infinite());
        let s = reflection_quantities(Impedance::real(0.0), c(50.0, 0.0)).unwrap();
        assert_eq!(s.gamma, c(-1.0, 0.0));
        assert!(s.vswr.is_infinite());
        let h = reflection_quantities(Impedance::real(150.0), c(50.0, 0.0)).unwrap();
        assert!((h.vswr - 3.0).abs() < 1e-12);
        assert!((h.return_loss_db - 6.0206).abs() < 1e-4);
        // IL from T and the impedance ratio agrees with the power form
        let il = -20.0 * h.transmission.norm().log10() + 10.0 * (150.0f64 / 50.0).log10();
        assert!((il - h.insertion_loss_db).abs() < 1e-12);
    }

    #[test]
    fn gamma_decays_along_lossy_line() {
        let g = gamma_at_distance(c(1.0, 0.0), c(0.23, 10.0), 1.0).unwrap();
        assert!((g.norm() - (-0.46f64).exp()).abs() < 1e-12);
        let g = gamma_at_distance(c(0.3, 0.2), c(0.0, 2.0 * PI), 0.5).unwrap();
        assert!((g - c(0.3, 0.2)).norm() < 1e-12);
    }

    #[test]
    fn power_on_lossy_line() {
        let line = Line { gamma: c(0.23, 24.3), z0: c(25.82, 0.0) };
        let p = line.power_flow(Impedance::real(25.82), 1.0, c(1.0, 0.0)).unwrap();
        assert!((p.p_in - 0.46f64.exp() / (2.0 * 25.82)).abs() < 1e-12);
        assert!((p.p_in - 0.0307).abs() < 5e-5);
        let lossless = Line::lossless(50.0, 1.0);
        let open = lossless.power_flow(Impedance::Infinite, 2.0, c(1.0, 0.0)).unwrap();
        assert_eq!(open.p_load, 0.0);
        assert_eq!(open.p_loss, 0.0);
    }

    #[test]
    fn parallel_plate() {
        let pp = parallel_plate_params(eta0() / 50.0, 1.0, 1.0, 1e9).unwrap();
        assert!((pp.z0 - 50.0).abs() < 1e-10);
        assert!(pp.warning.is_some());
        assert!((pp.z0 * pp.c * pp.phase_velocity() - 1.0).abs() < 1e-12);
        let four = parallel_plate_params(0.1, 0.001, 4.0, 1e9).unwrap();
        let one = parallel_plate_params(0.1, 0.001, 1.0, 1e9).unwrap();
        assert!((four.beta / one.beta - 2.0).abs() < 1e-12);
        assert!(four.warning.is_none());
    }
}
