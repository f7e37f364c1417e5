use super::Impedance;
use crate::error::{Error, Result};
use crate::numerics::C64;

/// A point on the chart: reflection coefficient and normalized impedance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmithPoint {
    pub gamma: C64,
    pub z_norm: Impedance,
}

pub fn smith_from_z(z: Impedance, z_ref: C64) -> Result<SmithPoint> {
    if !(z_ref.re > 0.0) {
        return Err(Error::domain("Re(z_ref) must be positive"));
    }
    let z_norm = match z {
        Impedance::Finite(z) => Impedance::Finite(z / z_ref),
        Impedance::Infinite => Impedance::Infinite,
    };
    Ok(SmithPoint { gamma: z.gamma(z_ref), z_norm })
}

pub fn smith_from_gamma(gamma: C64, z_ref: C64) -> Result<SmithPoint> {
    if !(z_ref.re > 0.0) {
        return Err(Error::domain("Re(z_ref) must be positive"));
    }
    let one = C64::new(1.0, 0.0);
    let den = one - gamma;
    let z_norm = if den.norm() == 0.0 { Impedance::Infinite } else { Impedance::Finite((one + gamma) / den) };
    Ok(SmithPoint { gamma, z_norm })
}

impl SmithPoint {
    pub fn impedance(&self, z_ref: C64) -> Impedance {
        match self.z_norm {
            Impedance::Finite(z) => Impedance::Finite(z * z_ref),
            Impedance::Infinite => Impedance::Infinite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleKind {
    Resistance,
    Reactance,
    Vswr,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: C64,
    pub radius: f64,
}

impl Circle {
    pub fn point(&self, angle: f64) -> C64 {
        self.center + C64::from_polar(self.radius, angle)
    }
}

/// Circle of constant normalized resistance, reactance or VSWR in the Γ plane.
pub fn constant_circle(kind: CircleKind, value: f64) -> Result<Circle> {
    match kind {
        CircleKind::Resistance => {
            if !(value >= 0.0) {
                return Err(Error::domain("normalized resistance must be non-negative"));
            }
            Ok(Circle { center: C64::new(value / (1.0 + value), 0.0), radius: 1.0 / (1.0 + value) })
        }
        CircleKind::Reactance => {
            if value == 0.0 {
                return Err(Error::Degenerate("x = 0 is the real axis, not a circle".into()));
            }
            if !value.is_finite() {
                return Err(Error::domain("reactance must be finite"));
            }
            Ok(Circle { center: C64::new(1.0, 1.0 / value), radius: 1.0 / value.abs() })
        }
        CircleKind::Vswr => {
            if !(value >= 1.0) {
                return Err(Error::domain("VSWR must be at least 1"));
            }
            Ok(Circle { center: C64::new(0.0, 0.0), radius: (value - 1.0) / (value + 1.0) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_landmarks() {
        let zr = C64::new(50.0, 0.0);
        assert_eq!(smith_from_z(Impedance::real(50.0), zr).unwrap().gamma, C64::new(0.0, 0.0));
        assert_eq!(smith_from_z(Impedance::real(0.0), zr).unwrap().gamma, C64::new(-1.0, 0.0));
        assert_eq!(smith_from_z(Impedance::Infinite, zr).unwrap().gamma, C64::new(1.0, 0.0));
        assert_eq!(smith_from_gamma(C64::new(1.0, 0.0), zr).unwrap().z_norm, Impedance::Infinite);
    }

    #[test]
    fn capacitive_load() {
        let g = smith_from_z(Impedance::Finite(C64::new(50.0, -150.0)), C64::new(50.0, 0.0)).unwrap().gamma;
        // (1 - 3j - 1) / (1 - 3j + 1) = -3j / (2 - 3j) = (9 - 6j) / 13
        assert!((g - C64::new(9.0 / 13.0, -6.0 / 13.0)).norm() < 1e-15);
        assert!((g.re - 0.6923).abs() < 5e-5 && (g.im + 0.4615).abs() < 5e-5);
    }

    #[test]
    fn circles() {
        let r = constant_circle(CircleKind::Resistance, 1.0).unwrap();
        assert_eq!((r.center, r.radius), (C64::new(0.5, 0.0), 0.5));
        assert!(constant_circle(CircleKind::Reactance, 0.0).is_err());
        let s = constant_circle(CircleKind::Vswr, 3.0).unwrap();
        assert_eq!(s.radius, 0.5);
        let x = constant_circle(CircleKind::Reactance, 2.0).unwrap();
        let p = smith_from_gamma(x.point(2.5), C64::new(1.0, 0.0)).unwrap();
        assert!((p.z_norm.finite().unwrap().im - 2.0).abs() < 1e-12);
    }
}
