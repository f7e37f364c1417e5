//! Matching networks and filter synthesis: conjugate matching, lumped
//! L-sections, single-stub tuners, stub low-pass filters and coupled-line
//! bandpass filters, with a ladder evaluator for their responses.

mod filters;
mod ladder;
mod prototype;

pub use filters::{coupled_line_bandpass_design, richards_kuroda_lowpass, BandpassDesign, CoupledPair, StubLowpass};
pub use ladder::{filter_response, FilterElement, Ladder, Response};
pub use prototype::LowpassPrototype;

use crate::error::{Error, Result};
use crate::network::Element;
use crate::numerics::C64;
use crate::tline::{Impedance, Line};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugateMatch {
    pub p_load: f64,
    pub is_conjugate: bool,
}

/// Power delivered from a source `v_source` (peak) behind `z_source` into `z_load`.
pub fn conjugate_match(z_source: C64, z_load: C64, v_source: C64) -> Result<ConjugateMatch> {
    if z_source.re < 0.0 || z_load.re < 0.0 {
        return Err(Error::domain("source and load resistance must be non-negative"));
    }
    let total = z_source + z_load;
    if z_source.re == 0.0 && z_load.re == 0.0 {
        return Err(Error::domain("power is undefined for a lossless source and load"));
    }
    let p_load = 0.5 * v_source.norm_sqr() * z_load.re / total.norm_sqr();
    let tol = 1e-12 * z_source.norm().max(1.0);
    Ok(ConjugateMatch { p_load, is_conjugate: (z_load - z_source.conj()).norm() < tol })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Series,
    Shunt,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LumpedPart {
    pub placement: Placement,
    pub element: Element,
}

/// Two-element L-section. `parts` are listed from the load towards the source.
#[derive(Debug, Clone, PartialEq)]
pub struct LSection {
    pub parts: Vec<LumpedPart>,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LumpedMatch {
    pub networks: Vec<LSection>,
    pub reason: Option<String>,
}

fn reactance_part(x: f64, w: f64, placement: Placement) -> Option<LumpedPart> {
    if x.abs() < 1e-12 {
        return None;
    }
    let element = if x > 0.0 { Element::Inductor(x / w) } else { Element::Capacitor(-1.0 / (w * x)) };
    Some(LumpedPart { placement, element })
}

fn susceptance_part(b: f64, w: f64) -> Option<LumpedPart> {
    if b.abs() < 1e-15 {
        return None;
    }
    let element = if b > 0.0 { Element::Capacitor(b / w) } else { Element::Inductor(-1.0 / (w * b)) };
    Some(LumpedPart { placement: Placement::Shunt, element })
}

/// Impedance seen through a chain of lumped parts listed from the load outwards.
pub fn evaluate_parts(z_load: C64, parts: &[LumpedPart], freq: f64) -> C64 {
    parts.iter().fold(z_load, |z, p| {
        let ze = p.element.impedance(freq);
        match p.placement {
            Placement::Series => z + ze,
            Placement::Shunt => 1.0 / (1.0 / z + 1.0 / ze),
        }
    })
}

/// Lumped L-section matches from `z_load` to a real `z_target` at `freq`.
pub fn lumped_match_synthesize(z_load: C64, z_target: f64, freq: f64) -> Result<LumpedMatch> {
    if !(z_load.re > 0.0) || !(z_target > 0.0) || !(freq > 0.0) {
        return Err(Error::domain("need Re(z_load) > 0, z_target > 0 and freq > 0"));
    }
    let (rl, xl, z0) = (z_load.re, z_load.im, z_target);
    if (z_load - z0).norm() < 1e-12 * z0 {
        return Ok(LumpedMatch { networks: vec![], reason: Some("already matched".into()) });
    }
    let w = 2.0 * PI * freq;
    let mut candidates: Vec<Vec<LumpedPart>> = Vec::new();
    if rl > z0 {
        // shunt element across the load, series element towards the source
        let m2 = rl * rl + xl * xl;
        let root = (rl / z0).sqrt() * (m2 - z0 * rl).sqrt();
        for sign in [1.0, -1.0] {
            let b = (xl + sign * root) / m2;
            let x = 1.0 / b + xl * z0 / rl - z0 / (b * rl);
            candidates.push(susceptance_part(b, w).into_iter().chain(reactance_part(x, w, Placement::Series)).collect());
        }
    } else {
        // series element at the load, shunt element towards the source
        let root = (rl * (z0 - rl)).sqrt();
        for sign in [1.0, -1.0] {
            let x = sign * root - xl;
            let b = sign * ((z0 - rl) / rl).sqrt() / z0;
            candidates.push(reactance_part(x, w, Placement::Series).into_iter().chain(susceptance_part(b, w)).collect());
        }
    }
    let mut networks = Vec::new();
    for parts in candidates {
        if parts.is_empty() || networks.iter().any(|n: &LSection| n.parts == parts) {
            continue;
        }
        let zin = evaluate_parts(z_load, &parts, freq);
        let gamma = ((zin - z0) / (zin + z0)).norm();
        if gamma < 1e-6 {
            networks.push(LSection { parts, gamma });
        }
    }
    let reason = networks.is_empty().then(|| "no two-element solution".to_string());
    Ok(LumpedMatch { networks, reason })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StubKind {
    Shorted,
    Open,
}

/// Distances and stub lengths in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StubSolution {
    pub d: f64,
    pub l: f64,
    pub kind: StubKind,
}

impl StubSolution {
    /// Input impedance of load + line(d) + shunt stub(l) on a lossless line of `z0`.
    pub fn input_impedance(&self, z_load: C64, z0: f64) -> Impedance {
        let line = Line::lossless(z0, 2.0 * PI);
        let zd = line.input_impedance(Impedance::Finite(z_load), self.d).expect("d >= 0");
        let term = match self.kind {
            StubKind::Shorted => Impedance::real(0.0),
            StubKind::Open => Impedance::Infinite,
        };
        let zs = line.input_impedance(term, self.l).expect("l >= 0");
        let admittance = |z: Impedance| match z {
            Impedance::Finite(z) => 1.0 / z,
            Impedance::Infinite => C64::new(0.0, 0.0),
        };
        let y = admittance(zd) + admittance(zs);
        if y.norm() == 0.0 {
            Impedance::Infinite
        } else {
            Impedance::Finite(1.0 / y)
        }
    }
}

/// Single shunt-stub tuners; principal solutions ordered by `d`.
pub fn single_stub_tuner(z_load: C64, z0: f64, kind: StubKind) -> Result<Vec<StubSolution>> {
    if !(z_load.re > 0.0) || !(z0 > 0.0) {
        return Err(Error::domain("need Re(z_load) > 0 and z0 > 0"));
    }
    if (z_load - z0).norm() < 1e-12 * z0 {
        return Err(Error::Degenerate("load already matched (d = l = 0)".into()));
    }
    let (rl, xl) = (z_load.re, z_load.im);
    let ts: Vec<f64> = if (rl - z0).abs() < 1e-12 * z0 {
        vec![-xl / (2.0 * z0)]
    } else {
        let root = (rl * ((z0 - rl).powi(2) + xl * xl) / z0).sqrt();
        vec![(xl + root) / (rl - z0), (xl - root) / (rl - z0)]
    };
    let y0 = 1.0 / z0;
    let mut out: Vec<StubSolution> = ts
        .into_iter()
        .map(|t| {
            let d = t.atan() / (2.0 * PI);
            let d = if d < 0.0 { d + 0.5 } else { d };
            let b = (rl * rl * t - (z0 - xl * t) * (xl + z0 * t)) / (z0 * (rl * rl + (xl + z0 * t).powi(2)));
            let l = match kind {
                StubKind::Shorted => (y0 / b).atan() / (2.0 * PI),
                StubKind::Open => -(b / y0).atan() / (2.0 * PI),
            };
            let l = if l < 0.0 { l + 0.5 } else { l };
            StubSolution { d, l, kind }
        })
        .collect();
    out.sort_by(|a, b| a.d.total_cmp(&b.d));
    for s in &out {
        let g = s.input_impedance(z_load, z0).gamma(C64::new(z0, 0.0)).norm();
        if !(g < 1e-9) {
            return Err(Error::Infeasible(format!("stub solution failed verification (|Γ| = {g:e})")));
        }
    }
    Ok(out)
}

/// Capacitance equivalent to an open stub at one frequency.
pub fn open_stub_capacitance(z0: f64, beta_l: f64, freq: f64) -> f64 {
    beta_l.tan() / (2.0 * PI * freq * z0)
}

/// Inductance equivalent to a shorted stub at one frequency.
pub fn short_stub_inductance(z0: f64, beta_l: f64, freq: f64) -> f64 {
    z0 * beta_l.tan() / (2.0 * PI * freq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;

    #[test]
    fn conjugate_power() {
        let m = conjugate_match(c(50.0, 0.0), c(50.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!((m.p_load - 0.01).abs() < 1e-15 && m.is_conjugate);
        let zs = c(50.0, 30.0);
        let conj = conjugate_match(zs, c(50.0, -30.0), c(2.0, 0.0)).unwrap();
        assert!(conj.is_conjugate && (conj.p_load - 4.0 / 400.0).abs() < 1e-15);
        let plain = conjugate_match(zs, c(50.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!(conj.p_load > plain.p_load && !plain.is_conjugate);
        assert!(conjugate_match(c(0.0, 5.0), c(0.0, -5.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn lumped_two_solutions() {
        let m = lumped_match_synthesize(c(200.0, -100.0), 100.0, 1e9).unwrap();
        assert_eq!(m.networks.len(), 2);
        for n in &m.networks {
            let zin = evaluate_parts(c(200.0, -100.0), &n.parts, 1e9);
            assert!(((zin - 100.0) / (zin + 100.0)).norm() < 1e-6);
        }
        let done = lumped_match_synthesize(c(100.0, 0.0), 100.0, 1e9).unwrap();
        assert!(done.networks.is_empty() && done.reason.as_deref() == Some("already matched"));
    }

    #[test]
    fn lumped_resistive_step() {
        let m = lumped_match_synthesize(c(100.0, 0.0), 50.0, 1e9).unwrap();
        let w = 2.0 * PI * 1e9;
        // low-pass section: shunt C at the load, series L towards the source
        let lp = m
            .networks
            .iter()
            .find(|n| matches!(n.parts[0].element, Element::Capacitor(_)))
            .unwrap();
        let Element::Inductor(l) = lp.parts[1].element else { panic!() };
        assert!((l - (100.0f64 * 50.0 - 50.0 * 50.0).sqrt() / w).abs() < 1e-18);
    }

    #[test]
    fn stub_exercise() {
        let sols = single_stub_tuner(c(100.0, -60.0), 50.0, StubKind::Shorted).unwrap();
        assert!(sols.iter().any(|s| (s.d - 0.125).abs() < 1e-3 && (s.l - 0.118).abs() < 1e-3), "{sols:?}");
        assert!(single_stub_tuner(c(50.0, 0.0), 50.0, StubKind::Open).is_err());
    }

    #[test]
    fn stub_real_loads() {
        for r in [0.2, 0.5, 2.0, 7.0] {
            for kind in [StubKind::Shorted, StubKind::Open] {
                let sols = single_stub_tuner(c(50.0 * r, 0.0), 50.0, kind).unwrap();
                assert_eq!(sols.len(), 2);
                for s in sols {
                    assert!((0.0..0.5).contains(&s.d) && s.l > 0.0 && s.l < 0.5);
                }
            }
        }
    }

    #[test]
    fn stub_capacitor_equivalence() {
        let (z0, bl, f) = (50.0, 0.4, 2e9);
        let stub = Line::lossless(z0, bl).input_impedance(Impedance::Infinite, 1.0).unwrap().finite().unwrap();
        let cap = Element::Capacitor(open_stub_capacitance(z0, bl, f)).impedance(f);
        assert!((stub - cap).norm() < 1e-9);
        let short = Line::lossless(z0, bl).input_impedance(Impedance::real(0.0), 1.0).unwrap().finite().unwrap();
        let ind = Element::Inductor(short_stub_inductance(z0, bl, f)).impedance(f);
        assert!((short - ind).norm() < 1e-9);
    }
}
