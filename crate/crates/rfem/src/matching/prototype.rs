use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Normalized low-pass ladder values g0..g_{N+1} (cutoff 1 rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct LowpassPrototype {
    pub g: Vec<f64>,
    pub ripple_db: f64,
}

impl LowpassPrototype {
    pub fn new(g: Vec<f64>, ripple_db: f64) -> Result<Self> {
        if g.len() < 3 {
            return Err(Error::domain("prototype needs g0, at least one element and g_{N+1}"));
        }
        if g.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::domain("prototype values must be positive"));
        }
        Ok(Self { g, ripple_db })
    }

    pub fn order(&self) -> usize {
        self.g.len() - 2
    }

    /// Butterworth values, g_k = 2 sin((2k-1)π/2N).
    pub fn maximally_flat(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("order must be at least 1"));
        }
        let mut g = vec![1.0];
        g.extend((1..=n).map(|k| 2.0 * ((2 * k - 1) as f64 * PI / (2 * n) as f64).sin()));
        g.push(1.0);
        Self::new(g, 3.0103)
    }

    /// Equal-ripple values for a passband ripple in dB.
    pub fn chebyshev(n: usize, ripple_db: f64) -> Result<Self> {
        if n == 0 || !(ripple_db > 0.0) {
            return Err(Error::domain("order must be at least 1 and ripple positive"));
        }
        let beta = (1.0 / (ripple_db / 17.37).tanh()).ln();
        let gam = (beta / (2.0 * n as f64)).sinh();
        let a = |k: usize| ((2 * k - 1) as f64 * PI / (2 * n) as f64).sin();
        let b = |k: usize| gam * gam + (k as f64 * PI / n as f64).sin().powi(2);
        let mut g = vec![1.0, 2.0 * a(1) / gam];
        for k in 2..=n {
            let prev = g[k - 1];
            g.push(4.0 * a(k - 1) * a(k) / (b(k - 1) * prev));
        }
        g.push(if n % 2 == 1 { 1.0 } else { (1.0 / (beta / 4.0).tanh()).powi(2) });
        Self::new(g, ripple_db)
    }

    /// Tabulated 3 dB ripple, N = 2.
    pub fn chebyshev_3db_n2() -> Self {
        Self { g: vec![1.0, 3.1013, 0.5339, 5.8095], ripple_db: 3.0 }
    }

    /// Tabulated 0.5 dB ripple, N = 2.
    #[allow(clippy::approx_constant)]
    pub fn chebyshev_0p5db_n2() -> Self {
        Self { g: vec![1.0, 1.4029, 0.7071, 1.9841], ripple_db: 0.5 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn butterworth_three() {
        let p = LowpassPrototype::maximally_flat(3).unwrap();
        let want = [1.0, 1.0, 2.0, 1.0, 1.0];
        assert!(p.g.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn chebyshev_matches_tables() {
        for (table, ripple) in [(LowpassPrototype::chebyshev_3db_n2(), 3.0), (LowpassPrototype::chebyshev_0p5db_n2(), 0.5)] {
            let p = LowpassPrototype::chebyshev(2, ripple).unwrap();
            for (a, b) in p.g.iter().zip(&table.g) {
                assert!((a - b).abs() < 2e-4, "{:?} vs {:?}", p.g, table.g);
            }
        }
    }
}
