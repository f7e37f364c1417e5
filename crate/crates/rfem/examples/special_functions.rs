//! Bessel functions, the cosine integral and adaptive quadrature.

use rfem::numerics::{bessel_j, cosine_integral, integrate_adaptive, QuadratureSpec};

fn main() -> rfem::Result<()> {
    for x in [0.5, 1.0, 2.405, 5.0, 10.0] {
        println!("x = {x:6.3}: J0 = {:+.8}, J1 = {:+.8}, J2 = {:+.8}", bessel_j(0, x)?, bessel_j(1, x)?, bessel_j(2, x)?);
    }
    for x in [0.1, 1.0, 2.0 * std::f64::consts::PI, 20.0] {
        println!("Ci({x:.4}) = {:+.10}", cosine_integral(x)?);
    }
    let q = integrate_adaptive(|t: f64| t.sin().powi(3), 0.0, std::f64::consts::PI, &QuadratureSpec::default())?;
    println!("integral of sin^3 over [0, pi] = {:.12} (error {:.1e}, exact 4/3)", q.value, q.error);
    Ok(())
}
