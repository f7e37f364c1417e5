use super::{check_excitation, wavenumber, ArrayLayout};
use crate::error::{Error, Result};
use crate::numerics::{db10, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::f64::consts::PI;

/// Random excitation errors. Phase errors are Gaussian with variance
/// `phase_var` plus, when `phase_bits` is set, uniform quantization error of
/// a `P`-bit phase shifter. Amplitude errors are Gaussian, relative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel {
    pub phase_var: f64,
    pub amp_var: f64,
    pub phase_bits: Option<u32>,
    pub seed: u64,
}

impl ErrorModel {
    pub fn quantized(bits: u32, seed: u64) -> Self {
        Self { phase_var: 0.0, amp_var: 0.0, phase_bits: Some(bits), seed }
    }

    /// `π² / (3·2^{2P})`.
    pub fn quantization_variance(bits: u32) -> f64 {
        PI * PI / (3.0 * 4f64.powi(bits as i32))
    }

    pub fn total_phase_var(&self) -> f64 {
        self.phase_var + self.phase_bits.map_or(0.0, Self::quantization_variance)
    }

    fn validate(&self) -> Result<()> {
        if !(self.phase_var >= 0.0) || !(self.amp_var >= 0.0) {
            return Err(Error::domain("error variances must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormErrors {
    pub phase_var: f64,
    /// Average normalized sidelobe power at the nulls of the ideal pattern.
    pub avg_null_sll: f64,
    pub avg_null_sll_db: f64,
    /// `D_e / D`.
    pub directivity_ratio: f64,
    pub directivity_ratio_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloErrors {
    pub n_trials: usize,
    /// Null positions of the ideal pattern along the `v = 0` cut.
    pub null_u: Vec<f64>,
    pub avg_null_sll: Option<f64>,
    pub avg_null_sll_db: Option<f64>,
    pub pattern_u: Vec<f64>,
    /// Trial-averaged `|S|²` normalized to the ideal peak, in dB.
    pub mean_pattern_db: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorStatistics {
    pub closed_form: ClosedFormErrors,
    pub monte_carlo: Option<MonteCarloErrors>,
    pub warnings: Vec<String>,
}

/// Closed-form and Monte Carlo effect of random excitation errors.
///
/// The beam is assumed co-phased so its ideal peak is `Σ|a|`. Trial `t` draws
/// from a ChaCha stream derived from `(seed, t)`, so results do not depend on
/// how trials are partitioned. `n_trials = 0` skips the simulation and
/// `pattern_points = 0` skips the averaged pattern.
pub fn error_statistics(
    layout: &ArrayLayout,
    a: &[C64],
    model: &ErrorModel,
    n_trials: usize,
    pattern_points: usize,
    freq: f64,
) -> Result<ErrorStatistics> {
    check_excitation(layout, a)?;
    model.validate()?;
    let d2 = model.total_phase_var();
    let a2 = model.amp_var;
    let sum_abs: f64 = a.iter().map(|x| x.norm()).sum();
    let sum_sq: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let mut warnings = Vec::new();
    if d2 + a2 >= 0.1 {
        warnings.push(format!("error variance {:.3} is outside the small-error regime", d2 + a2));
    }
    let sll = (d2 + a2) * sum_sq / ((1.0 - d2) * sum_abs * sum_abs);
    let ratio = 1.0 / (1.0 + d2 + a2);
    let closed_form = ClosedFormErrors {
        phase_var: d2,
        avg_null_sll: sll,
        avg_null_sll_db: db10(sll),
        directivity_ratio: ratio,
        directivity_ratio_db: db10(ratio),
    };
    let monte_carlo = if n_trials == 0 {
        None
    } else {
        let mc = monte_carlo(layout, a, model, n_trials, pattern_points, freq, sum_abs)?;
        if mc.null_u.is_empty() {
            warnings.push("ideal pattern has no nulls along v = 0; null level not estimated".into());
        }
        Some(mc)
    };
    Ok(ErrorStatistics { closed_form, monte_carlo, warnings })
}

fn phasors(layout: &ArrayLayout, us: &[f64], k0: f64) -> Vec<Vec<C64>> {
    us.iter().map(|&u| layout.positions.iter().map(|&(x, _)| C64::from_polar(1.0, k0 * x * u)).collect()).collect()
}

fn dot(row: &[C64], w: &[C64]) -> C64 {
    row.iter().zip(w).map(|(p, x)| p * x).sum()
}

fn golden_min(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let (x1, x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(x1) < f(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    0.5 * (lo + hi)
}

/// Null positions in `u ∈ [−1, 1]` of the ideal pattern, at least 70 dB down.
fn ideal_nulls(layout: &ArrayLayout, a: &[C64], k0: f64, peak: f64) -> Vec<f64> {
    let n = (16 * layout.len()).max(513);
    let h = 2.0 / (n - 1) as f64;
    let mag = |u: f64| super::af_sum(&layout.positions, a, k0, u, 0.0).norm();
    let vals: Vec<f64> = (0..n).map(|i| mag(-1.0 + h * i as f64)).collect();
    let mut out: Vec<f64> = Vec::new();
    for i in 1..n - 1 {
        if vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1] && vals[i] < 0.03 * peak {
            let u0 = -1.0 + h * i as f64;
            let u = golden_min(u0 - h, u0 + h, mag);
            if mag(u) < 3.2e-4 * peak && out.last().map_or(true, |&p| (u - p).abs() > h / 2.0) {
                out.push(u);
            }
        }
    }
    out
}

fn monte_carlo(
    layout: &ArrayLayout,
    a: &[C64],
    model: &ErrorModel,
    n_trials: usize,
    pattern_points: usize,
    freq: f64,
    sum_abs: f64,
) -> Result<MonteCarloErrors> {
    let k0 = wavenumber(freq);
    let null_u = ideal_nulls(layout, a, k0, sum_abs);
    let pattern_u: Vec<f64> = match pattern_points {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect(),
    };
    let at_nulls = phasors(layout, &null_u, k0);
    let at_pattern = phasors(layout, &pattern_u, k0);
    let phase = (model.phase_var > 0.0).then(|| Normal::new(0.0, model.phase_var.sqrt()).unwrap());
    let amp = (model.amp_var > 0.0).then(|| Normal::new(0.0, model.amp_var.sqrt()).unwrap());
    let half_lsb = model.phase_bits.map(|p| PI / 2f64.powi(p as i32));

    let mut null_acc = 0.0;
    let mut pattern_acc = vec![0.0; pattern_u.len()];
    let mut w = vec![C64::new(0.0, 0.0); a.len()];
    for t in 0..n_trials {
        let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
        rng.set_stream(t as u64);
        for (wk, &ak) in w.iter_mut().zip(a) {
            let mut dphi = phase.map_or(0.0, |d| d.sample(&mut rng));
            if let Some(b) = half_lsb {
                dphi += rng.gen_range(-b..b);
            }
            let damp = amp.map_or(0.0, |d| d.sample(&mut rng));
            *wk = ak * C64::from_polar(1.0 + damp, dphi);
        }
        null_acc += at_nulls.iter().map(|row| dot(row, &w).norm_sqr()).sum::<f64>();
        for (acc, row) in pattern_acc.iter_mut().zip(&at_pattern) {
            *acc += dot(row, &w).norm_sqr();
        }
    }
    let norm = sum_abs * sum_abs * n_trials as f64;
    let avg = (!null_u.is_empty()).then(|| null_acc / (norm * null_u.len() as f64));
    Ok(MonteCarloErrors {
        n_trials,
        avg_null_sll: avg,
        avg_null_sll_db: avg.map(db10),
        null_u,
        mean_pattern_db: pattern_acc.iter().map(|p| db10(p / norm)).collect(),
        pattern_u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tline::C0;

    const F: f64 = 10e9;

    fn uniform(k: usize) -> (ArrayLayout, Vec<C64>) {
        (ArrayLayout::linear(k, C0 / F / 2.0).unwrap(), vec![C64::new(1.0, 0.0); k])
    }

    #[test]
    fn four_bit_closed_form() {
        let (l, a) = uniform(64);
        let s = error_statistics(&l, &a, &ErrorModel::quantized(4, 1), 0, 0, F).unwrap();
        let c = s.closed_form;
        assert!((c.phase_var - 0.012_851).abs() < 1e-6);
        assert!((c.phase_var.sqrt().to_degrees() - 6.5).abs() < 0.05);
        assert!((c.avg_null_sll_db + 36.917).abs() < 0.001);
        assert!((c.directivity_ratio_db + 0.055_46).abs() < 1e-5);
        assert!(s.monte_carlo.is_none());
    }

    #[test]
    fn ideal_shifter_has_no_loss() {
        let (l, a) = uniform(16);
        let s = error_statistics(&l, &a, &ErrorModel::quantized(60, 1), 0, 0, F).unwrap();
        assert!(s.closed_form.phase_var < 1e-30);
        assert_eq!(s.closed_form.directivity_ratio, 1.0);
    }

    #[test]
    fn uniform_nulls_found() {
        let (l, a) = uniform(16);
        let s = error_statistics(&l, &a, &ErrorModel::quantized(4, 1), 1, 0, F).unwrap();
        let mc = s.monte_carlo.unwrap();
        // nulls at u = m/8, m = ±1..±7
        assert_eq!(mc.null_u.len(), 14);
        for u in &mc.null_u {
            assert!(((u * 8.0).round() - u * 8.0).abs() < 1e-6);
        }
    }

    #[test]
    fn monte_carlo_matches_expected_null_level() {
        // uniform quantization: E|S|² at a null = K (1 − sinc²(π/16)), oracle in closed form
        let (l, a) = uniform(64);
        let s = error_statistics(&l, &a, &ErrorModel::quantized(4, 42), 4000, 0, F).unwrap();
        let b = PI / 16.0;
        let expect = db10((1.0 - (b.sin() / b).powi(2)) / 64.0);
        let got = s.monte_carlo.unwrap().avg_null_sll_db.unwrap();
        assert!((got - expect).abs() < 0.15, "{got} vs {expect}");
    }

    #[test]
    fn trials_are_partition_independent() {
        let (l, a) = uniform(8);
        let m = ErrorModel { phase_var: 0.01, amp_var: 0.005, phase_bits: None, seed: 9 };
        let s1 = error_statistics(&l, &a, &m, 10, 11, F).unwrap().monte_carlo.unwrap();
        let s2 = error_statistics(&l, &a, &m, 10, 11, F).unwrap().monte_carlo.unwrap();
        assert_eq!(s1, s2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        rng.set_stream(3);
        let mut again = ChaCha8Rng::seed_from_u64(9);
        again.set_stream(3);
        assert_eq!(rng.gen::<u64>(), again.gen::<u64>());
    }

    #[test]
    fn large_errors_warn() {
        let (l, a) = uniform(8);
        let m = ErrorModel { phase_var: 0.2, amp_var: 0.0, phase_bits: None, seed: 0 };
        assert_eq!(error_statistics(&l, &a, &m, 0, 0, F).unwrap().warnings.len(), 1);
    }
}
