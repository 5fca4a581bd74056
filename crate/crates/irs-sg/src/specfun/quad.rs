//! Adaptive Gauss-Kronrod integration (real or complex integrands),
//! Gauss-Legendre rules and the semi-infinite driver.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Initial truncation point for semi-infinite oscillatory integrals.
    pub upper_cutoff: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 4000,
            upper_cutoff: 1.0,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize, upper_cutoff: f64) -> Result<Self> {
        let q = QuadratureSpec {
            rel_tol,
            abs_tol,
            max_subdivisions,
            upper_cutoff,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.upper_cutoff > 0.0 && self.max_subdivisions >= 1) {
            return Err(Error::domain(
                "QuadratureSpec",
                "need rel_tol > 0, abs_tol > 0, upper_cutoff > 0, max_subdivisions >= 1",
            ));
        }
        Ok(())
    }

    pub fn with_tol(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_cutoff(mut self, upper_cutoff: f64) -> Self {
        self.upper_cutoff = upper_cutoff;
        self
    }
}

/// Values that can be integrated: f64 and Complex64.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn finite(&self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_977_887,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// 10-point Gauss weights at XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// One 21-point Kronrod panel; returns (estimate, error estimate).
pub fn gk21<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[10];
    let mut gauss = T::zero();
    let mut abs_sum = fc.magnitude() * WGK[10];
    for i in 0..10 {
        let x = h * XGK[i];
        let f1 = f(c - x);
        let f2 = f(c + x);
        let s = f1 + f2;
        kron = kron + s * WGK[i];
        abs_sum += (f1.magnitude() + f2.magnitude()) * WGK[i];
        if i % 2 == 1 {
            gauss = gauss + s * WG[i / 2];
        }
    }
    let est = kron * h;
    let mut err = ((kron - gauss) * h).magnitude();
    // QUADPACK-style rescaling makes the error estimate less pessimistic
    // for smooth integrands.
    let resabs = abs_sum * h.abs();
    if err > 0.0 {
        err *= (200.0 * err / resabs.max(f64::MIN_POSITIVE)).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    if !est.finite() {
        err = f64::INFINITY;
    }
    (est, err)
}

struct Panel<T> {
    a: f64,
    b: f64,
    est: T,
    err: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub subdivisions: usize,
}

/// Adaptive integration over [a, b] starting from `initial_panels` equal
/// pieces. Panels narrower than round-off are frozen rather than split.
pub fn integrate_adaptive<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    quad: &QuadratureSpec,
) -> Result<QuadResult<T>> {
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            error: 0.0,
            subdivisions: 0,
        });
    }
    let n0 = initial_panels.max(1);
    let mut heap = BinaryHeap::with_capacity(n0 + 2 * quad.max_subdivisions);
    let mut total = T::zero();
    let mut total_err = 0.0;
    let w = (b - a) / n0 as f64;
    for i in 0..n0 {
        let lo = a + w * i as f64;
        let hi = if i + 1 == n0 { b } else { lo + w };
        let (est, err) = gk21(&mut f, lo, hi);
        total = total + est;
        total_err += err;
        heap.push(Panel { a: lo, b: hi, est, err });
    }
    let mut frozen_err = 0.0;
    let mut frozen = T::zero();
    let mut splits = 0;
    loop {
        let tol = quad.abs_tol.max(quad.rel_tol * total.magnitude());
        if total_err <= tol {
            break;
        }
        let Some(p) = heap.pop() else { break };
        let mid = 0.5 * (p.a + p.b);
        if (p.b - p.a).abs() <= 1e-13 * p.a.abs().max(p.b.abs()).max(1e-300) {
            frozen = frozen + p.est;
            frozen_err += p.err;
            continue;
        }
        if splits >= quad.max_subdivisions {
            heap.push(p);
            let value = heap.iter().fold(frozen, |acc, q| acc + q.est);
            return Err(Error::Quadrature {
                estimate: value.magnitude(),
                error: total_err,
                evaluations: splits,
            });
        }
        let (e1, r1) = gk21(&mut f, p.a, mid);
        let (e2, r2) = gk21(&mut f, mid, p.b);
        splits += 1;
        total = total - p.est + e1 + e2;
        total_err += r1 + r2 - p.err;
        heap.push(Panel { a: p.a, b: mid, est: e1, err: r1 });
        heap.push(Panel { a: mid, b: p.b, est: e2, err: r2 });
    }
    // resum to avoid drift from the running updates
    let mut value = frozen;
    let mut err = frozen_err;
    for p in heap.iter() {
        value = value + p.est;
        err += p.err;
    }
    if !value.finite() {
        return Err(Error::Quadrature {
            estimate: f64::NAN,
            error: f64::INFINITY,
            evaluations: splits,
        });
    }
    Ok(QuadResult {
        value,
        error: err,
        subdivisions: splits,
    })
}

/// Integral over (0, inf) through s = e^u; tolerates an integrable
/// singularity at the origin. The window for u covers
/// s in [1e-40 * upper_cutoff, 1e40 * upper_cutoff]; `upper_cutoff` serves as
/// the characteristic scale of the integrand.
pub fn integrate_semiinf<F: FnMut(f64) -> f64>(mut f: F, quad: &QuadratureSpec) -> Result<f64> {
    let r = integrate_semiinf_detail(&mut f, quad)?;
    Ok(r.value)
}

pub fn integrate_semiinf_detail<F: FnMut(f64) -> f64>(f: &mut F, quad: &QuadratureSpec) -> Result<QuadResult<f64>> {
    let centre = quad.upper_cutoff.ln();
    let half = 40.0 * std::f64::consts::LN_10;
    let g = |u: f64| {
        let s = u.exp();
        let v = f(s) * s;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate_adaptive(g, centre - half, centre + half, 64, quad)
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Gauss-Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    x.iter().zip(&w).map(|(xi, wi)| (c + h * xi, h * wi)).collect()
}

/// Neumaier-compensated sum; order of summation is fixed by the slice.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}
