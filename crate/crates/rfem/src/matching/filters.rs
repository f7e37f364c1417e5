use super::ladder::{filter_response, FilterElement, Ladder};
use super::prototype::LowpassPrototype;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Stub low-pass realization. `richards` is the network straight after the
/// Richards substitution with unit elements added at the ports; `ladder` is the
/// shunt-stub form after the Kuroda identities.
#[derive(Debug, Clone, PartialEq)]
pub struct StubLowpass {
    pub richards: Ladder,
    pub ladder: Ladder,
    pub kuroda_n2: Vec<f64>,
}

/// A unit element `z_ue` followed by a series shorted stub `z_stub` equals a
/// shunt open stub followed by a unit element. Returns (stub, unit element)
/// impedances and n² = 1 + z_stub/z_ue.
pub fn kuroda_ue_series(z_ue: f64, z_stub: f64) -> (f64, f64, f64) {
    let n2 = 1.0 + z_stub / z_ue;
    (n2 * z_ue * z_ue / z_stub, n2 * z_ue, n2)
}

/// Low-pass filter of shunt open stubs and unit elements, every line λ/8 long at
/// `f_cutoff`. Orders 1 and 3 are realized.
pub fn richards_kuroda_lowpass(proto: &LowpassPrototype, f_cutoff: f64, z0: f64) -> Result<StubLowpass> {
    if !(f_cutoff > 0.0) || !(z0 > 0.0) {
        return Err(Error::domain("cutoff and reference impedance must be positive"));
    }
    let n = proto.order();
    let th = PI / 4.0;
    let g = &proto.g;
    let mk = |elements| Ladder { elements, f0: f_cutoff, z0 };
    match n {
        1 => {
            let stub = FilterElement::ShuntOpenStub { z: z0 / g[1], theta0: th };
            Ok(StubLowpass { richards: mk(vec![stub]), ladder: mk(vec![stub]), kuroda_n2: vec![] })
        }
        3 => {
            if (g[4] - 1.0).abs() > 1e-9 {
                return Err(Error::Unsupported("order-3 prototype must end in a unit load".into()));
            }
            let ue = |z| FilterElement::UnitElement { z, theta0: th };
            let (z1, z3) = (g[1] * z0, g[3] * z0);
            let mid = FilterElement::ShuntOpenStub { z: z0 / g[2], theta0: th };
            let richards = mk(vec![
                ue(z0),
                FilterElement::SeriesShortStub { z: z1, theta0: th },
                mid,
                FilterElement::SeriesShortStub { z: z3, theta0: th },
                ue(z0),
            ]);
            let (s1, u1, n1) = kuroda_ue_series(z0, z1);
            let (s3, u3, n3) = kuroda_ue_series(z0, z3);
            let ladder = mk(vec![
                FilterElement::ShuntOpenStub { z: s1, theta0: th },
                ue(u1),
                mid,
                ue(u3),
                FilterElement::ShuntOpenStub { z: s3, theta0: th },
            ]);
            Ok(StubLowpass { richards, ladder, kuroda_n2: vec![n1, n3] })
        }
        n if n % 2 == 0 => Err(Error::Unsupported(format!(
            "even order {n} leaves a series stub that the Kuroda identities cannot remove"
        ))),
        n => Err(Error::Unsupported(format!("order {n}: only orders 1 and 3 are realized"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledPair {
    pub z_even: f64,
    pub z_odd: f64,
}

/// Coupled-line bandpass: N+1 pairs and the equivalent circuit of N+2 series
/// open stubs alternating with N+1 λ/4 lines.
#[derive(Debug, Clone, PartialEq)]
pub struct BandpassDesign {
    pub pairs: Vec<CoupledPair>,
    pub stubs: Vec<f64>,
    pub lines: Vec<f64>,
    pub ladder: Ladder,
}

/// `f1` is the lower passband edge, `f0` the centre frequency.
pub fn coupled_line_bandpass_design(proto: &LowpassPrototype, f0: f64, f1: f64, z0: f64) -> Result<BandpassDesign> {
    if !(f1 > 0.0 && f1 < f0) || !(z0 > 0.0) {
        return Err(Error::domain("need 0 < f1 < f0 and z0 > 0"));
    }
    let n = proto.order();
    let g = &proto.g;
    let th1 = PI * f1 / (2.0 * f0);
    let (s1, t1) = (th1.sin(), th1.tan());
    let q = 1.0 / t1;
    let k1 = 1.0 / (g[0] * g[1]).sqrt();
    let p = (q * (q * q + 1.0) / (q + 1.0 / (2.0 * k1 * k1))).sqrt();
    let s = z0 * (p * s1 / k1).powi(2);
    if !(s > 0.0) {
        return Err(Error::Infeasible("scale factor is not positive".into()));
    }
    let mut pairs = vec![CoupledPair { z_even: z0 * (1.0 + p * s1), z_odd: z0 * (1.0 - p * s1) }];
    for k in 2..=n {
        let kk = 1.0 / (g[k - 1] * g[k]).sqrt();
        let nk = (kk * kk + (t1 / 2.0).powi(2)).sqrt();
        pairs.push(CoupledPair { z_even: s * (nk + kk), z_odd: s * (nk - kk) });
    }
    pairs.push(pairs[0]);
    if let Some(bad) = pairs.iter().position(|c| !(c.z_odd > 0.0 && c.z_even > c.z_odd)) {
        return Err(Error::Infeasible(format!(
            "pair {} has z_even = {:.3}, z_odd = {:.3}",
            bad + 1,
            pairs[bad].z_even,
            pairs[bad].z_odd
        )));
    }
    let lines: Vec<f64> = pairs.iter().map(|c| (c.z_even - c.z_odd) / 2.0).collect();
    let mut stubs = vec![pairs[0].z_odd];
    stubs.extend(pairs.windows(2).map(|w| w[0].z_odd + w[1].z_odd));
    stubs.push(pairs[n].z_odd);
    let th = PI / 2.0;
    let mut elements = Vec::with_capacity(2 * n + 3);
    for (k, &zs) in stubs.iter().enumerate() {
        elements.push(FilterElement::SeriesOpenStub { z: zs, theta0: th });
        if let Some(&zl) = lines.get(k) {
            elements.push(FilterElement::UnitElement { z: zl, theta0: th });
        }
    }
    let ladder = Ladder { elements, f0, z0 };
    // the equivalent circuit must pass the centre frequency
    let centre = filter_response(&ladder, &[f0])?[0];
    if !(centre.s21.norm() > 0.5) {
        return Err(Error::Infeasible("synthesized network does not pass the centre frequency".into()));
    }
    Ok(BandpassDesign { pairs, stubs, lines, ladder })
}
