use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

/// Tolerances and subdivision budget for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-8, max_subdivisions: 10_000 }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions == 0 {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        Ok(Self { abs_tol, rel_tol, max_subdivisions })
    }
}

/// Values the integrator can accumulate: real or complex.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Default
{
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Integral estimate with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    pub error: f64,
    pub subdivisions: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kronrod = kronrod + s * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + s * WG[j / 2];
        }
    }
    let k = kronrod * half;
    let g = gauss * half;
    (k, (k - g).magnitude())
}

struct Piece<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Piece<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Piece<T> {}
impl<T> PartialOrd for Piece<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Piece<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss-Kronrod (7/15) integration of `f` over `[a, b]`.
pub fn integrate_adaptive<T, F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate_breaks(f, &[a, b], spec)
}

/// Adaptive integration over consecutive intervals `points[i]..points[i+1]`;
/// interior points mark kinks or near-singularities.
pub fn integrate_breaks<T, F>(mut f: F, points: &[f64], spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if points.len() < 2 {
        return Err(Error::domain("need at least two integration limits"));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::domain("integration limits must be finite"));
    }
    let (lo, hi) = (points[0], points[points.len() - 1]);
    if lo > hi {
        let rev: Vec<f64> = points.iter().rev().copied().collect();
        let q = integrate_breaks(f, &rev, spec)?;
        return Ok(Quadrature { value: q.value * -1.0, ..q });
    }
    let mut heap = BinaryHeap::new();
    let mut total = T::default();
    let mut err = 0.0;
    for w in points.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (v, e) = gk15(&mut f, w[0], w[1]);
        total = total + v;
        err += e;
        heap.push(Piece { a: w[0], b: w[1], value: v, error: e });
    }
    let mut count = heap.len();
    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * total.magnitude());
        if err <= tol {
            return Ok(Quadrature { value: total, error: err, subdivisions: count });
        }
        if count >= spec.max_subdivisions {
            return Err(Error::Convergence { estimate: total.to_complex(), error: err });
        }
        let Some(worst) = heap.pop() else {
            return Ok(Quadrature { value: total, error: err, subdivisions: count });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further in floating point
            return Err(Error::Convergence { estimate: total.to_complex(), error: err });
        }
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        total = total - worst.value + v1 + v2;
        err = err - worst.error + e1 + e2;
        heap.push(Piece { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, error: e2 });
        count += 1;
        if count % 64 == 0 {
            // refresh the running sums to stop round-off drift
            total = heap.iter().fold(T::default(), |acc, p| acc + p.value);
            err = heap.iter().map(|p| p.error).sum();
        }
    }
}

/// Iterated integral `∫_{ax}^{bx} ∫_{ay}^{by} f(x, y) dy dx`.
pub fn integrate_2d<T, F>(mut f: F, ax: f64, bx: f64, ay: f64, by: f64, spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: QuadValue,
    F: FnMut(f64, f64) -> T,
{
    let inner_spec = QuadratureSpec { abs_tol: spec.abs_tol * 0.1, rel_tol: spec.rel_tol * 0.1, ..*spec };
    let mut failure = None;
    let outer = integrate_adaptive(
        |x| match integrate_adaptive(|y| f(x, y), ay, by, &inner_spec) {
            Ok(q) => q.value,
            Err(e) => {
                failure.get_or_insert(e);
                T::default()
            }
        },
        ax,
        bx,
        spec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(outer)
}
