use crate::error::{Error, Result};
use crate::network::{abcd_identity, abcd_mul, abcd_to_s, Abcd, Element, NPortParams};
use crate::numerics::{ComplexMatrix, C64};

/// Ladder building block. Distributed elements carry their electrical length
/// `theta0` (rad) at the ladder reference frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterElement {
    UnitElement { z: f64, theta0: f64 },
    ShuntOpenStub { z: f64, theta0: f64 },
    ShuntShortStub { z: f64, theta0: f64 },
    SeriesOpenStub { z: f64, theta0: f64 },
    SeriesShortStub { z: f64, theta0: f64 },
    Series(Element),
    Shunt(Element),
}

impl FilterElement {
    pub fn abcd(&self, f_ratio: f64, freq: f64) -> Abcd {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let series = |z: C64| [[one, z], [zero, one]];
        let shunt = |y: C64| [[one, zero], [y, one]];
        match *self {
            FilterElement::UnitElement { z, theta0 } => {
                let (s, c) = (theta0 * f_ratio).sin_cos();
                [[C64::new(c, 0.0), C64::new(0.0, z * s)], [C64::new(0.0, s / z), C64::new(c, 0.0)]]
            }
            FilterElement::ShuntOpenStub { z, theta0 } => shunt(C64::new(0.0, (theta0 * f_ratio).tan() / z)),
            FilterElement::ShuntShortStub { z, theta0 } => shunt(C64::new(0.0, -1.0 / (z * (theta0 * f_ratio).tan()))),
            FilterElement::SeriesOpenStub { z, theta0 } => series(C64::new(0.0, -z / (theta0 * f_ratio).tan())),
            FilterElement::SeriesShortStub { z, theta0 } => series(C64::new(0.0, z * (theta0 * f_ratio).tan())),
            FilterElement::Series(e) => series(e.impedance(freq)),
            FilterElement::Shunt(e) => shunt(1.0 / e.impedance(freq)),
        }
    }
}

/// Cascade of elements from port 1 to port 2 between `z0` terminations.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladder {
    pub elements: Vec<FilterElement>,
    pub f0: f64,
    pub z0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Response {
    pub freq: f64,
    pub s11: C64,
    pub s21: C64,
}

impl Response {
    pub fn s21_db(&self) -> f64 {
        20.0 * self.s21.norm().log10()
    }

    pub fn s11_db(&self) -> f64 {
        20.0 * self.s11.norm().log10()
    }
}

impl Ladder {
    pub fn abcd(&self, freq: f64) -> Abcd {
        let r = freq / self.f0;
        self.elements.iter().fold(abcd_identity(), |acc, e| abcd_mul(&acc, &e.abcd(r, freq)))
    }

    pub fn s_matrix(&self, freq: f64) -> Result<ComplexMatrix> {
        abcd_to_s(&self.abcd(freq), self.z0)
    }

    pub fn to_nport(&self, freqs: &[f64]) -> Result<NPortParams> {
        let mats = freqs.iter().map(|&f| self.s_matrix(f)).collect::<Result<Vec<_>>>()?;
        NPortParams::s(freqs.to_vec(), mats, self.z0)
    }
}

/// S11 and S21 of a ladder on a frequency grid.
pub fn filter_response(ladder: &Ladder, freqs: &[f64]) -> Result<Vec<Response>> {
    if !(ladder.f0 > 0.0) || !(ladder.z0 > 0.0) {
        return Err(Error::domain("ladder needs positive f0 and z0"));
    }
    freqs
        .iter()
        .map(|&f| {
            if !(f > 0.0) {
                return Err(Error::domain("frequencies must be positive"));
            }
            let s = ladder.s_matrix(f)?;
            Ok(Response { freq: f, s11: s[(0, 0)], s21: s[(1, 0)] })
        })
        .collect()
}
