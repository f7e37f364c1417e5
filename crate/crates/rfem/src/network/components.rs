use super::{abcd_to_s, Abcd, NPortParams, ParamKind};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Lumped element whose impedance may depend on frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element {
    Impedance(C64),
    Resistor(f64),
    Inductor(f64),
    Capacitor(f64),
}

impl Element {
    pub fn impedance(&self, freq: f64) -> C64 {
        let w = 2.0 * PI * freq;
        match *self {
            Element::Impedance(z) => z,
            Element::Resistor(r) => C64::new(r, 0.0),
            Element::Inductor(l) => C64::new(0.0, w * l),
            Element::Capacitor(c) => C64::new(0.0, -1.0 / (w * c)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Component {
    SeriesZ(Element),
    ShuntY(Element),
    /// Lossless line of impedance `z_line`, electrical length `theta0` (rad) at `f0`.
    IdealLine { z_line: f64, theta0: f64, f0: f64 },
    /// Ideal lossless junction; port 1 sees `z0`, ports 2 and 3 see `z1` and `z2`.
    TJunction { z0: f64, z1: f64, z2: f64 },
    ResistiveDivider,
    /// Equal-split Wilkinson with λ/4 arms at `f0`.
    WilkinsonEqual { f0: f64 },
}

/// S parameters of a canonical component on `freqs`. The T-junction carries
/// its own per-port references and ignores `z_ref`.
pub fn component_sparams(comp: &Component, freqs: &[f64], z_ref: f64) -> Result<NPortParams> {
    if !(z_ref > 0.0) {
        return Err(Error::domain("reference impedance must be positive"));
    }
    if freqs.iter().any(|&f| !(f > 0.0)) {
        return Err(Error::domain("frequencies must be positive"));
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut mats = Vec::with_capacity(freqs.len());
    let mut refs = None;
    for (idx, &f) in freqs.iter().enumerate() {
        let m = match *comp {
            Component::SeriesZ(e) => {
                let abcd: Abcd = [[one, e.impedance(f)], [zero, one]];
                abcd_to_s(&abcd, z_ref)
            }
            Component::ShuntY(e) => {
                let z = e.impedance(f);
                if z.norm() == 0.0 {
                    return Err(Error::Conversion { index: idx, reason: "shunt short".into() });
                }
                let abcd: Abcd = [[one, zero], [one / z, one]];
                abcd_to_s(&abcd, z_ref)
            }
            Component::IdealLine { z_line, theta0, f0 } => {
                if !(z_line > 0.0) || !(f0 > 0.0) || theta0 < 0.0 {
                    return Err(Error::domain("line needs positive impedance and reference frequency"));
                }
                abcd_to_s(&line_abcd(z_line, theta0 * f / f0), z_ref)
            }
            Component::TJunction { z0, z1, z2 } => {
                if !(z0 > 0.0 && z1 > 0.0 && z2 > 0.0) {
                    return Err(Error::domain("junction port impedances must be positive"));
                }
                refs = Some(vec![z0, z1, z2]);
                Ok(junction(&[z0, z1, z2]))
            }
            Component::ResistiveDivider => Ok(ComplexMatrix::from_fn(3, 3, |i, j| {
                if i == j {
                    zero
                } else {
                    C64::new(0.5, 0.0)
                }
            })),
            Component::WilkinsonEqual { f0 } => {
                if !(f0 > 0.0) {
                    return Err(Error::domain("f0 must be positive"));
                }
                wilkinson(z_ref, PI / 2.0 * f / f0)
                    .map_err(|e| Error::Conversion { index: idx, reason: e.to_string() })
            }
        }?;
        mats.push(m);
    }
    let n = mats.first().map_or(0, |m: &ComplexMatrix| m.rows());
    let refs = refs.unwrap_or_else(|| vec![z_ref; n]);
    NPortParams::new(ParamKind::S, freqs.to_vec(), mats, refs)
}

pub(crate) fn line_abcd(z: f64, theta: f64) -> Abcd {
    let (s, c) = theta.sin_cos();
    [
        [C64::new(c, 0.0), C64::new(0.0, z * s)],
        [C64::new(0.0, s / z), C64::new(c, 0.0)],
    ]
}

fn junction(z: &[f64]) -> ComplexMatrix {
    let y: Vec<f64> = z.iter().map(|v| 1.0 / v).collect();
    let total: f64 = y.iter().sum();
    ComplexMatrix::from_fn(z.len(), z.len(), |i, j| {
        let d = if i == j { 1.0 } else { 0.0 };
        C64::new(2.0 * (y[i] * y[j]).sqrt() / total - d, 0.0)
    })
}

fn wilkinson(z0: f64, theta: f64) -> Result<ComplexMatrix> {
    let s = theta.sin();
    if s.abs() < 1e-12 {
        return Err(Error::Degenerate("arms are a multiple of λ/2 long".into()));
    }
    let yc = FRAC_1_SQRT_2 / z0;
    let y11 = C64::new(0.0, -yc * theta.cos() / s);
    let y12 = C64::new(0.0, yc / s);
    let g = C64::new(1.0 / (2.0 * z0), 0.0);
    let y = ComplexMatrix::from_rows(&[
        vec![2.0 * y11, y12, y12],
        vec![y12, y11 + g, -g],
        vec![y12, -g, y11 + g],
    ])?;
    let eye = ComplexMatrix::identity(3);
    let zy = y.scale(C64::new(z0, 0.0));
    eye.sub(&zy)?.mul(&eye.add(&zy)?.inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{cascade, convert};
    use crate::numerics::c;

    #[test]
    fn divider() {
        let p = component_sparams(&Component::ResistiveDivider, &[1e9], 50.0).unwrap();
        let s21 = p.matrices[0][(1, 0)];
        assert_eq!(s21, c(0.5, 0.0));
        assert!((20.0 * s21.norm().log10() + 6.02).abs() < 0.005);
    }

    #[test]
    fn wilkinson_at_center() {
        let p = component_sparams(&Component::WilkinsonEqual { f0: 1e9 }, &[1e9], 50.0).unwrap();
        let s = &p.matrices[0];
        let t = c(0.0, -FRAC_1_SQRT_2);
        assert!((s[(1, 0)] - t).norm() < 1e-12 && (s[(0, 1)] - t).norm() < 1e-12);
        assert!((s[(2, 0)] - t).norm() < 1e-12);
        for i in 0..3 {
            assert!(s[(i, i)].norm() < 1e-12);
        }
        assert!(s[(1, 2)].norm() < 1e-12 && s[(2, 1)].norm() < 1e-12);
    }

    #[test]
    fn t_junction_output_mismatch() {
        let p = component_sparams(&Component::TJunction { z0: 50.0, z1: 100.0, z2: 100.0 }, &[1e9], 50.0).unwrap();
        let s = &p.matrices[0];
        assert!(s[(0, 0)].norm() < 1e-15);
        assert!((s[(1, 1)] - c(-0.5, 0.0)).norm() < 1e-15);
        // junction alone: output port sees 50 || 100 = 33.3 ohm
        let z: f64 = 1.0 / (1.0 / 50.0 + 1.0 / 100.0);
        assert!(((z - 100.0) / (z + 100.0) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn lines_add_phase() {
        let f = [1e9, 2e9];
        let a = component_sparams(&Component::IdealLine { z_line: 50.0, theta0: 0.3, f0: 1e9 }, &f, 50.0).unwrap();
        let b = component_sparams(&Component::IdealLine { z_line: 50.0, theta0: 0.5, f0: 1e9 }, &f, 50.0).unwrap();
        let ab = cascade(&a, &b).unwrap();
        assert!((ab.matrices[0][(1, 0)] - C64::from_polar(1.0, -0.8)).norm() < 1e-12);
        assert!((ab.matrices[1][(1, 0)] - C64::from_polar(1.0, -1.6)).norm() < 1e-12);
    }

    #[test]
    fn series_halves_cascade() {
        let f = [1e8, 1e9];
        let half = component_sparams(&Component::SeriesZ(Element::Resistor(25.0)), &f, 50.0).unwrap();
        let whole = component_sparams(&Component::SeriesZ(Element::Resistor(50.0)), &f, 50.0).unwrap();
        let ab = cascade(&half, &half).unwrap();
        assert!(ab.matrices[1].sub(&whole.matrices[1]).unwrap().max_abs() < 1e-14);
        let zero = component_sparams(&Component::IdealLine { z_line: 50.0, theta0: 0.0, f0: 1e9 }, &f, 50.0).unwrap();
        assert_eq!(cascade(&whole, &zero).unwrap(), whole);
        assert!(convert(&whole, ParamKind::Z, 50.0).is_err());
    }
}
