use crate::error::{Error, Result};
use crate::numerics::{C64, J};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hand {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Lhcp,
    Rhcp,
    Linear,
    Elliptic(Hand),
}

/// Circular decomposition `E = E_L (u_θ + j u_φ)/√2 + E_R (u_θ − j u_φ)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarization {
    pub e_l: C64,
    pub e_r: C64,
    /// `f64::INFINITY` for linear polarization.
    pub axial_ratio: f64,
    pub sense: Sense,
}

const CIRCULAR_TOL: f64 = 1e-9;

/// Axial ratio and handedness. `E_φ = jE_θ` is left-hand circular.
pub fn polarization_metrics(e_theta: C64, e_phi: C64) -> Result<Polarization> {
    let total = (e_theta.norm_sqr() + e_phi.norm_sqr()).sqrt();
    if !(total > 0.0) {
        return Err(Error::Degenerate("zero field has no polarization".into()));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let e_l = (e_theta - J * e_phi) * s;
    let e_r = (e_theta + J * e_phi) * s;
    let (l, r) = (e_l.norm(), e_r.norm());
    let (axial_ratio, sense) = if (l - r).abs() <= CIRCULAR_TOL * total {
        (f64::INFINITY, Sense::Linear)
    } else if r <= CIRCULAR_TOL * total {
        (1.0, Sense::Lhcp)
    } else if l <= CIRCULAR_TOL * total {
        (1.0, Sense::Rhcp)
    } else {
        let hand = if l > r { Hand::Left } else { Hand::Right };
        (((l + r) / (l - r)).abs(), Sense::Elliptic(hand))
    };
    Ok(Polarization { e_l, e_r, axial_ratio, sense })
}
