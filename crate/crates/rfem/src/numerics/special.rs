use crate::error::{Error, Result};
use num_complex::Complex64;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `sin(x)/x`, continuous at zero.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Cosine integral `ci(x) = -∫_x^∞ cos(t)/t dt` for `x > 0`.
///
/// Ascending series up to `x = 2`; beyond that the continued fraction for
/// `E1(jx)` (modified Lentz), whose real part gives `-ci(x)`.
pub fn cosine_integral(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("cosine integral needs finite x > 0, got {x}")));
    }
    if x <= 2.0 {
        let x2 = x * x;
        let mut sum = 0.0;
        let mut term = 1.0; // (-1)^k x^{2k} / (2k)!
        for k in 1..60 {
            let kk = 2 * k;
            term *= -x2 / ((kk - 1) as f64 * kk as f64);
            let add = term / kk as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        return Ok(EULER_GAMMA + x.ln() + sum);
    }
    const FPMIN: f64 = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut cc = Complex64::new(1.0 / FPMIN, 0.0);
    let mut d = Complex64::new(1.0, 0.0) / b;
    let mut h = d;
    for i in 2..10_000 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = Complex64::new(1.0, 0.0) / (d * a + b);
        cc = b + Complex64::new(a, 0.0) / cc;
        let del = cc * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    let h = Complex64::new(x.cos(), -x.sin()) * h;
    Ok(-h.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(std::f64::consts::PI).abs() < 1e-15);
        assert!((sinc(1.0) - 0.841_470_984_8).abs() < 1e-10);
    }

    #[test]
    fn ci_reference_points() {
        assert!((cosine_integral(1.0).unwrap() - 0.337_403_922_9).abs() < 1e-9);
        // independent values from a high-precision evaluation
        assert!((cosine_integral(2.0).unwrap() - 0.422_980_828_774_865).abs() < 1e-12);
        assert!((cosine_integral(5.0).unwrap() - (-0.190_029_749_656_644)).abs() < 1e-12);
        assert!((cosine_integral(20.0).unwrap() - 0.044_419_820_845_353_3).abs() < 1e-12);
        assert!(cosine_integral(1e3).unwrap().abs() < 1.1e-3);
    }

    #[test]
    fn ci_branches_meet() {
        let lo = cosine_integral(2.0).unwrap();
        let hi = cosine_integral(2.0 + 1e-12).unwrap();
        assert!((lo - hi).abs() < 1e-11);
    }

    #[test]
    fn ci_rejects_nonpositive() {
        assert!(cosine_integral(0.0).is_err());
        assert!(cosine_integral(-1.0).is_err());
    }

    #[test]
    fn radiation_integral_of_half_wave_wire() {
        let two_pi = 2.0 * std::f64::consts::PI;
        let ip = 0.5 * (EULER_GAMMA + two_pi.ln() - cosine_integral(two_pi).unwrap());
        assert!((ip - 2.437 / 2.0).abs() < 5e-4);
    }
}
