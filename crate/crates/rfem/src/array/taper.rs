use super::wavenumber;
use crate::error::{Error, Result};
use crate::numerics::{C64, J};
use std::f64::consts::PI;

/// Lowest sidelobe suppression accepted by the synthesized tapers; the
/// uniform array already reaches it.
pub const MIN_TAPER_SLL_DB: f64 = 13.26;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Taper {
    Uniform,
    /// `h + (1 − h) cos^m(π x / ((K − 1) d))` with `x` centered on the array.
    CosinePedestal { m: u32, h: f64 },
    /// Sampled n̄-parameter Taylor line source. `sll_db` is the sidelobe
    /// suppression in dB (the sign is ignored).
    Taylor { sll_db: f64, nbar: u32 },
    /// Dolph-Chebyshev through zero placement on the unit circle.
    Chebyshev { sll_db: f64 },
}

impl Taper {
    pub fn taylor(sll_db: f64) -> Self {
        Taper::Taylor { sll_db, nbar: 8 }
    }
}

fn suppression(sll_db: f64) -> Result<f64> {
    let s = sll_db.abs();
    if !s.is_finite() || s < MIN_TAPER_SLL_DB {
        return Err(Error::Infeasible(format!(
            "sidelobe level {s} dB is above the uniform-array level of {MIN_TAPER_SLL_DB} dB"
        )));
    }
    Ok(s)
}

/// Symmetric amplitude taper for `k` elements, normalized to a maximum of 1.
pub fn taper_generate(kind: Taper, k: usize) -> Result<Vec<f64>> {
    if k < 2 {
        return Err(Error::domain("taper needs at least two elements"));
    }
    let mid = (k - 1) as f64 / 2.0;
    let raw: Vec<f64> = match kind {
        Taper::Uniform => vec![1.0; k],
        Taper::CosinePedestal { m, h } => {
            if !(0.0..=1.0).contains(&h) {
                return Err(Error::domain("pedestal h must lie in [0, 1]"));
            }
            (0..k).map(|i| h + (1.0 - h) * (PI * (i as f64 - mid) / (k - 1) as f64).cos().max(0.0).powi(m as i32)).collect()
        }
        Taper::Taylor { sll_db, nbar } => {
            let s = suppression(sll_db)?;
            if nbar == 0 {
                return Err(Error::domain("nbar must be at least 1"));
            }
            let coeffs = taylor_coefficients(s, nbar);
            (0..k)
                .map(|i| {
                    let x = (i as f64 - mid) / k as f64;
                    1.0 + 2.0 * coeffs.iter().enumerate().map(|(m, f)| f * (2.0 * PI * (m + 1) as f64 * x).cos()).sum::<f64>()
                })
                .collect()
        }
        Taper::Chebyshev { sll_db } => {
            let s = suppression(sll_db)?;
            let n = k - 1;
            let r = 10f64.powf(s / 20.0);
            let x0 = (r.acosh() / n as f64).cosh();
            let zeros: Vec<C64> = (1..=n)
                .map(|p| {
                    let c = ((2 * p - 1) as f64 * PI / (2 * n) as f64).cos();
                    (J * 2.0 * (c / x0).acos()).exp()
                })
                .collect();
            schelkunov_coefficients(&zeros, C64::new(1.0, 0.0)).iter().map(|c| c.re).collect()
        }
    };
    let peak = raw.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if !(peak > 0.0) {
        return Err(Error::Degenerate("taper vanishes".into()));
    }
    Ok(raw.iter().map(|x| x / peak).collect())
}

/// `F_m`, `m = 1..n̄−1`, of the Taylor line-source expansion.
fn taylor_coefficients(sll_db: f64, nbar: u32) -> Vec<f64> {
    let a = (10f64.powf(sll_db / 20.0)).acosh() / PI;
    let nb = nbar as f64;
    let sigma2 = nb * nb / (a * a + (nb - 0.5).powi(2));
    (1..nbar)
        .map(|m| {
            let m2 = (m * m) as f64;
            let num: f64 = (1..nbar).map(|n| 1.0 - m2 / (sigma2 * (a * a + (n as f64 - 0.5).powi(2)))).product();
            let den: f64 = (1..nbar).filter(|&n| n != m).map(|n| 1.0 - m2 / (n * n) as f64).product();
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            sign * num / (2.0 * den)
        })
        .collect()
}

fn horner(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp)
}

/// Zeros of `S(z) = a_1 + a_2 z + … + a_K z^{K−1}` (Aberth iteration).
pub fn schelkunov_zeros(a: &[C64]) -> Result<Vec<C64>> {
    let n = a.len().saturating_sub(1);
    if a.is_empty() {
        return Err(Error::domain("no coefficients"));
    }
    if a[n].norm() == 0.0 {
        return Err(Error::Degenerate("leading coefficient a_K is zero".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = a[n];
    let c: Vec<C64> = a.iter().map(|x| x / lead).collect();
    let r = if c[0].norm() > 0.0 { c[0].norm().powf(1.0 / n as f64) } else { 1.0 };
    let mut z: Vec<C64> = (0..n).map(|i| C64::from_polar(r, 2.0 * PI * i as f64 / n as f64 + 0.4)).collect();
    let mut step = f64::INFINITY;
    for _ in 0..1000 {
        step = 0.0;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulse: C64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * repulse);
            z[i] -= w;
            step = step.max(w.norm() / z[i].norm().max(1.0));
        }
        if step < 1e-15 {
            break;
        }
    }
    if !(step < 1e-10) {
        return Err(Error::Convergence { estimate: z[0], error: step });
    }
    z.sort_by(|x, y| x.arg().partial_cmp(&y.arg()).unwrap());
    Ok(z)
}

/// Coefficients `a_1..a_K` of `a_K Π (z − z_i)`, recovered from samples
/// of the product at the K-th roots of unity.
pub fn schelkunov_coefficients(zeros: &[C64], a_k: C64) -> Vec<C64> {
    let k = zeros.len() + 1;
    let roots: Vec<C64> = (0..k).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64)).collect();
    let samples: Vec<C64> = roots.iter().map(|&w| zeros.iter().fold(a_k, |acc, &z0| acc * (w - z0))).collect();
    (0..k)
        .map(|m| samples.iter().enumerate().map(|(j, &s)| s * roots[(j * m) % k].conj()).sum::<C64>() / k as f64)
        .collect()
}

/// Direction cosine `u` of the pattern null produced by a zero on the unit
/// circle, for element spacing `d`; `None` if the zero is off the circle or
/// maps to invisible space.
pub fn zero_direction(z: C64, d: f64, freq: f64) -> Option<f64> {
    if (z.norm() - 1.0).abs() > 1e-6 {
        return None;
    }
    let u = z.arg() / (wavenumber(freq) * d);
    (u.abs() <= 1.0).then_some(u)
}
