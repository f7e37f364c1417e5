//! Special functions, adaptive quadrature, dense complex linear algebra and
//! coordinate helpers.
//!
//! Sign conventions used throughout the crate: time factor `e^{+jωt}`,
//! forward wave `e^{-jβz}`, `θ` measured from the +z axis.

mod bessel;
mod coords;
mod linalg;
mod quadrature;
mod special;

pub use bessel::{bessel_j, bessel_j_unchecked};
pub use coords::{
    cartesian_to_spherical, cross, dot, spherical_basis, spherical_to_cartesian, SphericalBasis,
    Vec3,
};
pub use linalg::{solve_complex_dense, ComplexMatrix, Lu};
pub use quadrature::{
    integrate_2d, integrate_adaptive, integrate_breaks, QuadValue, Quadrature, QuadratureSpec,
};
pub use special::{cosine_integral, sinc, EULER_GAMMA};

pub use num_complex::Complex64;

/// Complex scalar used by every module.
pub type C64 = Complex64;

/// Imaginary unit.
pub const J: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Complex number from magnitude and angle in degrees.
pub fn polar_deg(mag: f64, deg: f64) -> C64 {
    C64::from_polar(mag, deg.to_radians())
}

/// Power ratio to dB.
pub fn db10(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Amplitude ratio to dB.
pub fn db20(x: f64) -> f64 {
    20.0 * x.log10()
}

pub fn from_db10(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn from_db20(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}
