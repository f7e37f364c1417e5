//! Two-port amplifier design: power gains and mismatch factors, stability
//! tests and circles, unilateral constant-gain circles, noise figure, noise
//! circles and Friis cascades.

use crate::error::{Error, Result};
use crate::network::{two_port_gammas, PortTermination};
use crate::numerics::{db10, ComplexMatrix, C64};

/// Boltzmann constant, J/K.
pub const KB: f64 = 1.380_649e-23;
/// Default reference temperature, K.
pub const T0: f64 = 300.0;

fn entries(s: &ComplexMatrix) -> Result<[C64; 4]> {
    if s.rows() != 2 || s.cols() != 2 {
        return Err(Error::Mismatch("expected a 2x2 S matrix".into()));
    }
    Ok([s[(0, 0)], s[(0, 1)], s[(1, 0)], s[(1, 1)]])
}

#[derive(Debug, Clone, PartialEq)]
pub struct GainReport {
    pub g_del: f64,
    pub g_av: f64,
    pub g_t: f64,
    pub m_s: f64,
    pub m_l: f64,
    pub gamma_in: C64,
    pub gamma_out: C64,
    pub warnings: Vec<String>,
}

impl GainReport {
    pub fn g_del_db(&self) -> f64 {
        db10(self.g_del)
    }
    pub fn g_av_db(&self) -> f64 {
        db10(self.g_av)
    }
    pub fn g_t_db(&self) -> f64 {
        db10(self.g_t)
    }
    pub fn m_s_db(&self) -> f64 {
        db10(self.m_s)
    }
    pub fn m_l_db(&self) -> f64 {
        db10(self.m_l)
    }
}

/// Delivered, available and transducer gain with the two mismatch factors.
pub fn power_gains(s: &ComplexMatrix, gamma_s: C64, gamma_l: C64) -> Result<GainReport> {
    let [s11, _, s21, s22] = entries(s)?;
    let term = PortTermination { gamma_s, gamma_l };
    let g = two_port_gammas(s, &term)?;
    let (gin, gout) = (g.gamma_in, g.gamma_out);
    let one = C64::new(1.0, 0.0);
    let mut warnings = Vec::new();
    if (one - s22 * gamma_l).norm() < 1e-12 || (one - s11 * gamma_s).norm() < 1e-12 {
        warnings.push("near-singular termination: 1 - S22 ΓL or 1 - S11 ΓS vanishes".to_string());
    }
    if gin.norm() >= 1.0 || gout.norm() >= 1.0 {
        warnings.push(format!(
            "|Γin| = {:.4}, |Γout| = {:.4}: terminations may cause oscillation",
            gin.norm(),
            gout.norm()
        ));
    }
    let s21sq = s21.norm_sqr();
    let gl2 = gamma_l.norm_sqr();
    let gs2 = gamma_s.norm_sqr();
    let g_del = s21sq * (1.0 - gl2) / ((one - s22 * gamma_l).norm_sqr() * (1.0 - gin.norm_sqr()));
    let g_av = s21sq * (1.0 - gs2) / ((one - s11 * gamma_s).norm_sqr() * (1.0 - gout.norm_sqr()));
    let m_s = (1.0 - gin.norm_sqr()) * (1.0 - gs2) / (one - gin * gamma_s).norm_sqr();
    let m_l = (1.0 - gout.norm_sqr()) * (1.0 - gl2) / (one - gout * gamma_l).norm_sqr();
    // transducer gain from its own definition, P_del,L / P_av,S
    let g_t = s21sq * (1.0 - gs2) * (1.0 - gl2) / ((one - gin * gamma_s).norm_sqr() * (one - s22 * gamma_l).norm_sqr());
    Ok(GainReport { g_del, g_av, g_t, m_s, m_l, gamma_in: gin, gamma_out: gout, warnings })
}

/// Power available from a source of peak voltage `v_s` behind `z_s`.
pub fn available_power(v_s: C64, z_s: C64) -> Result<f64> {
    if !(z_s.re > 0.0) {
        return Err(Error::domain("source resistance must be positive"));
    }
    Ok(v_s.norm_sqr() / (8.0 * z_s.re))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stability {
    pub k: f64,
    pub delta: C64,
    pub mu: f64,
    pub unconditionally_stable: bool,
}

/// Rollett K with |Δ|, and the single-parameter µ test.
pub fn stability_factors(s: &ComplexMatrix) -> Result<Stability> {
    let [s11, s12, s21, s22] = entries(s)?;
    let delta = s11 * s22 - s12 * s21;
    let p = (s12 * s21).norm();
    let num = 1.0 - s11.norm_sqr() - s22.norm_sqr() + delta.norm_sqr();
    let k = if p == 0.0 { f64::INFINITY } else { num / (2.0 * p) };
    let den = (s22 - s11.conj() * delta).norm() + p;
    let mu_num = 1.0 - s11.norm_sqr();
    let mu = if den == 0.0 { f64::INFINITY } else { mu_num / den };
    let unconditionally_stable = if p == 0.0 {
        s11.norm() < 1.0 && s22.norm() < 1.0
    } else {
        k > 1.0 && delta.norm() < 1.0
    };
    Ok(Stability { k, delta, mu, unconditionally_stable })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleMeaning {
    LoadStability,
    SourceStability,
    Gain,
    Noise,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartCircle {
    pub center: C64,
    pub radius: f64,
    pub meaning: CircleMeaning,
}

impl ChartCircle {
    pub fn point(&self, angle: f64) -> C64 {
        self.center + C64::from_polar(self.radius, angle)
    }

    pub fn contains(&self, z: C64) -> bool {
        (z - self.center).norm() < self.radius
    }

    /// `n` evenly spaced points on the circle.
    pub fn sample(&self, n: usize) -> Vec<C64> {
        (0..n).map(|i| self.point(2.0 * std::f64::consts::PI * i as f64 / n as f64)).collect()
    }
}

/// A stability boundary is a circle, or a straight line through the chart
/// when the circle denominator vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    Circle(ChartCircle),
    Line,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StableRegion {
    Inside,
    Outside,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityCircles {
    pub load: Boundary,
    pub source: Boundary,
    pub load_stable: StableRegion,
    pub source_stable: StableRegion,
}

fn stability_circle(a: C64, b: C64, delta: C64, p: C64, meaning: CircleMeaning) -> Boundary {
    // a is the reflection at this side, b at the opposite side
    let den = a.norm_sqr() - delta.norm_sqr();
    if den.abs() < 1e-14 {
        return Boundary::Line;
    }
    Boundary::Circle(ChartCircle {
        center: (a - delta * b.conj()).conj() / den,
        radius: (p / den).norm(),
        meaning,
    })
}

fn region(boundary: &Boundary, origin_stable: bool) -> StableRegion {
    match boundary {
        Boundary::Line => StableRegion::Undetermined,
        Boundary::Circle(c) => {
            let origin_inside = c.center.norm() < c.radius;
            match (origin_inside, origin_stable) {
                (true, true) | (false, false) => StableRegion::Inside,
                _ => StableRegion::Outside,
            }
        }
    }
}

/// Load-plane (|Γin| = 1) and source-plane (|Γout| = 1) stability circles.
pub fn stability_circles(s: &ComplexMatrix) -> Result<StabilityCircles> {
    let [s11, s12, s21, s22] = entries(s)?;
    let delta = s11 * s22 - s12 * s21;
    let p = s12 * s21;
    let load = stability_circle(s22, s11, delta, p, CircleMeaning::LoadStability);
    let source = stability_circle(s11, s22, delta, p, CircleMeaning::SourceStability);
    Ok(StabilityCircles {
        load,
        source,
        load_stable: region(&load, s11.norm() < 1.0),
        source_stable: region(&source, s22.norm() < 1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Source,
    Load,
}

/// Unilateral mismatch factor M_S (or M_L) at a termination.
pub fn unilateral_mismatch(s: &ComplexMatrix, side: Side, gamma: C64) -> Result<f64> {
    let [s11, _, _, s22] = entries(s)?;
    let sii = if side == Side::Source { s11 } else { s22 };
    Ok((1.0 - gamma.norm_sqr()) / (C64::new(1.0, 0.0) - sii * gamma).norm_sqr())
}

/// Largest unilateral mismatch factor, 1/(1 − |S_ii|²).
pub fn max_unilateral_gain(s: &ComplexMatrix, side: Side) -> Result<f64> {
    let [s11, _, _, s22] = entries(s)?;
    let sii = if side == Side::Source { s11 } else { s22 };
    if sii.norm() >= 1.0 {
        return Err(Error::Infeasible("|S_ii| >= 1: mismatch factor is unbounded".into()));
    }
    Ok(1.0 / (1.0 - sii.norm_sqr()))
}

/// Constant-gain circles with S12 treated as zero; `gains_db` are M_S or M_L values.
pub fn constant_gain_circles(s: &ComplexMatrix, side: Side, gains_db: &[f64]) -> Result<Vec<ChartCircle>> {
    let [s11, _, _, s22] = entries(s)?;
    let sii = if side == Side::Source { s11 } else { s22 };
    let m_max = max_unilateral_gain(s, side)?;
    let m2 = sii.norm_sqr();
    gains_db
        .iter()
        .map(|&gdb| {
            let m = 10f64.powf(gdb / 10.0);
            if m > m_max * (1.0 + 1e-12) {
                return Err(Error::Infeasible(format!(
                    "{gdb} dB exceeds the maximum of {:.3} dB",
                    db10(m_max)
                )));
            }
            let g = (m / m_max).min(1.0);
            let den = 1.0 - m2 * (1.0 - g);
            Ok(ChartCircle {
                center: g * sii.conj() / den,
                radius: (1.0 - m2) * (1.0 - g).sqrt() / den,
                meaning: CircleMeaning::Gain,
            })
        })
        .collect()
}

/// Noise parameters of a device: F_min (linear), R_n (Ω) and Γ_opt against `z0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub f_min: f64,
    pub r_n: f64,
    pub gamma_opt: C64,
    pub z0: f64,
}

impl NoiseSpec {
    pub fn new(f_min: f64, r_n: f64, gamma_opt: C64, z0: f64) -> Result<Self> {
        if !(f_min >= 1.0) || !(r_n > 0.0) || !(gamma_opt.norm() < 1.0) || !(z0 > 0.0) {
            return Err(Error::domain("need F_min >= 1, R_n > 0, |Γopt| < 1, z0 > 0"));
        }
        Ok(Self { f_min, r_n, gamma_opt, z0 })
    }

    pub fn from_z_opt(nf_min_db: f64, r_n: f64, z_opt: C64, z0: f64) -> Result<Self> {
        Self::new(10f64.powf(nf_min_db / 10.0), r_n, (z_opt - z0) / (z_opt + z0), z0)
    }

    pub fn y_opt(&self) -> C64 {
        let one = C64::new(1.0, 0.0);
        (one - self.gamma_opt) / (one + self.gamma_opt) / self.z0
    }

    /// F = F_min + (R_n/G_S)|Y_S − Y_opt|².
    pub fn figure_from_admittance(&self, y_s: C64) -> Result<f64> {
        if !(y_s.re > 0.0) {
            return Err(Error::domain("source conductance must be positive"));
        }
        Ok(self.f_min + self.r_n / y_s.re * (y_s - self.y_opt()).norm_sqr())
    }

    /// Reflection-coefficient form of the same expression.
    pub fn figure_from_gamma(&self, gamma_s: C64) -> Result<f64> {
        if !(gamma_s.norm() < 1.0) {
            return Err(Error::domain("|Γs| must be below 1"));
        }
        let one = C64::new(1.0, 0.0);
        Ok(self.f_min
            + 4.0 * self.r_n / self.z0 * (gamma_s - self.gamma_opt).norm_sqr()
                / ((1.0 - gamma_s.norm_sqr()) * (one + self.gamma_opt).norm_sqr()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseCircle {
    pub n: f64,
    pub circle: ChartCircle,
}

/// Source reflections giving noise factor `f_target` (linear).
pub fn noise_circle(spec: &NoiseSpec, f_target: f64) -> Result<NoiseCircle> {
    if f_target < spec.f_min {
        return Err(Error::Infeasible(format!("target F = {f_target} is below F_min = {}", spec.f_min)));
    }
    let go = spec.gamma_opt;
    let n = (f_target - spec.f_min) / (4.0 * spec.r_n / spec.z0) * (C64::new(1.0, 0.0) + go).norm_sqr();
    Ok(NoiseCircle {
        n,
        circle: ChartCircle {
            center: go / (1.0 + n),
            radius: (n * n + n * (1.0 - go.norm_sqr())).sqrt() / (1.0 + n),
            meaning: CircleMeaning::Noise,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage {
    pub g_av: f64,
    pub f: f64,
}

impl Stage {
    pub fn from_db(gain_db: f64, nf_db: f64) -> Self {
        Self { g_av: 10f64.powf(gain_db / 10.0), f: 10f64.powf(nf_db / 10.0) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeNoise {
    pub f_total: f64,
    pub nf_total_db: f64,
    pub t_e_total: f64,
    pub gain_total: f64,
}

/// Friis cascade of stages in signal order.
pub fn noise_cascade(stages: &[Stage], t0: f64) -> Result<CascadeNoise> {
    if stages.is_empty() {
        return Err(Error::domain("empty stage list"));
    }
    if stages.iter().any(|s| !(s.g_av > 0.0) || !(s.f >= 1.0)) {
        return Err(Error::domain("stage gains must be positive and noise factors at least 1"));
    }
    let mut f_total = 0.0;
    let mut t_e = 0.0;
    let mut gain = 1.0;
    for (i, s) in stages.iter().enumerate() {
        let excess = if i == 0 { s.f } else { s.f - 1.0 };
        f_total += excess / gain;
        t_e += (s.f - 1.0) * t0 / gain;
        gain *= s.g_av;
    }
    Ok(CascadeNoise { f_total, nf_total_db: db10(f_total), t_e_total: t_e, gain_total: gain })
}

/// k_B T B in watts.
pub fn thermal_noise_power(temperature: f64, bandwidth: f64) -> f64 {
    KB * temperature * bandwidth
}

/// k_B T B in dBm.
pub fn thermal_noise_dbm(temperature: f64, bandwidth: f64) -> f64 {
    db10(thermal_noise_power(temperature, bandwidth) / 1e-3)
}
