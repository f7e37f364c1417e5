use crate::error::{Error, Result};

const MAX_ORDER: u32 = 50;
const MAX_ARG: f64 = 1e4;

/// Bessel function of the first kind `J_n(x)` for integer order.
///
/// Orders 0 and 1 use the ascending series up to `|x| = 12` and the Hankel
/// asymptotic expansion beyond. Higher orders recur upward from `J_0, J_1`
/// when `x > n` and use Miller's downward recurrence otherwise.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::domain(format!("bessel order {order} exceeds {MAX_ORDER}")));
    }
    if !x.is_finite() || x.abs() > MAX_ARG {
        return Err(Error::domain(format!("bessel argument {x} outside |x| <= {MAX_ARG}")));
    }
    Ok(bessel_j_unchecked(order, x))
}

/// Same as [`bessel_j`] without range checks; used in hot loops where the
/// caller already guarantees a supported argument.
pub fn bessel_j_unchecked(order: u32, x: f64) -> f64 {
    let ax = x.abs();
    let val = match order {
        0 => j01(0, ax),
        1 => j01(1, ax),
        n => jn_positive(n, ax),
    };
    if x < 0.0 && order % 2 == 1 {
        -val
    } else {
        val
    }
}

fn j01(n: u32, x: f64) -> f64 {
    if x <= 12.0 {
        series(n, x)
    } else {
        hankel(n, x)
    }
}

fn series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let mut sum = term;
    for k in 1..200 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && k > 2 {
            break;
        }
    }
    sum
}

fn hankel(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let z8 = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kk = (2 * k - 1) as f64;
        term *= (mu - kk * kk) / (k as f64 * z8);
        if term.abs() > prev {
            break;
        }
        prev = term.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * term;
        } else {
            p += sign * term;
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * n as f64 + 0.25) * std::f64::consts::PI;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn jn_positive(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x > n as f64 {
        let mut jm = j01(0, x);
        let mut j = j01(1, x);
        for k in 1..n {
            let next = 2.0 * k as f64 / x * j - jm;
            jm = j;
            j = next;
        }
        return j;
    }
    // Miller: start well above n, recur downward, normalise with
    // J0 + 2 Σ J_2k = 1.
    const BIG: f64 = 1e200;
    let tox = 2.0 / x;
    let start = 2 * ((n + ((160.0 * n as f64).sqrt() as u32)) / 2) + 20;
    let mut jsum = false;
    let mut sum = 0.0;
    let mut ans = 0.0;
    let mut bjp = 0.0;
    let mut bj = 1.0;
    for k in (1..=start).rev() {
        let bjm = k as f64 * tox * bj - bjp;
        bjp = bj;
        bj = bjm;
        if bj.abs() > BIG {
            bj /= BIG;
            bjp /= BIG;
            ans /= BIG;
            sum /= BIG;
        }
        if jsum {
            sum += bj;
        }
        jsum = !jsum;
        if k == n {
            ans = bjp;
        }
    }
    sum = 2.0 * sum - bj;
    ans / sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn trivial_points() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert!(bessel_j(1, 3.831_705_970_2).unwrap().abs() < 1e-9);
    }

    #[test]
    fn high_precision_reference_values() {
        let table = [
            (0, 1.0, 0.765_197_686_557_966_6),
            (1, 2.5, 0.497_094_102_464_274_04),
            (2, 1.0, 0.114_903_484_931_900_48),
            (5, 3.0, 0.043_028_434_877_047_58),
            (10, 5.0, 0.001_467_802_647_310_474),
            (3, 50.0, 0.092_734_804_061_634_43),
            (50, 30.0, 2.058_165_663_156_418e-8),
            (20, 100.0, 0.062_217_458_498_338_75),
            (0, 100.0, 0.019_985_850_304_223_12),
            (1, 1e4, 0.003_647_450_755_529_580),
            (50, 1e4, 0.007_495_630_492_851_663),
            (7, 0.1, 1.549_614_867_620_228e-13),
        ];
        for (n, x, want) in table {
            let got = bessel_j(n, x).unwrap();
            assert!(rel(got, want) < 1e-10, "J{n}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn negative_argument_parity() {
        assert!((bessel_j(3, -2.0).unwrap() + bessel_j(3, 2.0).unwrap()).abs() < 1e-15);
        assert!((bessel_j(4, -2.0).unwrap() - bessel_j(4, 2.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn out_of_range() {
        assert!(bessel_j(51, 1.0).is_err());
        assert!(bessel_j(0, 1.1e4).is_err());
        assert!(bessel_j(0, f64::NAN).is_err());
    }
}
