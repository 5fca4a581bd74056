use crate::error::{Error, Result};
use std::f64::consts::PI;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("ln_gamma", format!("x = {x} must be positive and finite")));
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        return (PI / (PI * x).sin()).ln() - ln_gamma_pos(1.0 - x);
    }
    // Near the zeros at 1 and 2 work with the shifted argument to keep
    // absolute accuracy.
    if (x - 1.0).abs() < 0.25 || (x - 2.0).abs() < 0.25 {
        return ln_gamma_near_roots(x);
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

// Series of ln Gamma(1+e) = -gamma e + sum_{k>=2} (-1)^k zeta(k) e^k / k.
fn ln_gamma_near_roots(x: f64) -> f64 {
    const EULER: f64 = 0.577_215_664_901_532_9;
    const ZETA: [f64; 30] = [
        0.0,
        0.0,
        1.644_934_066_848_226_4,
        1.202_056_903_159_594_3,
        1.082_323_233_711_138_2,
        1.036_927_755_143_369_9,
        1.017_343_061_984_449_1,
        1.008_349_277_381_922_8,
        1.004_077_356_197_944_4,
        1.002_008_392_826_082_2,
        1.000_994_575_127_818_1,
        1.000_494_188_604_119_5,
        1.000_246_086_553_308_1,
        1.000_122_713_347_578_5,
        1.000_061_248_135_058_7,
        1.000_030_588_236_307_0,
        1.000_015_282_259_408_7,
        1.000_007_637_197_637_9,
        1.000_003_817_293_264_9,
        1.000_001_908_212_716_6,
        1.000_000_953_962_033_9,
        1.000_000_476_932_986_8,
        1.000_000_238_450_502_7,
        1.000_000_119_219_925_9,
        1.000_000_059_608_189_1,
        1.000_000_029_803_503_5,
        1.000_000_014_901_554_8,
        1.000_000_007_450_711_8,
        1.000_000_003_725_334_0,
        1.000_000_001_862_659_7,
    ];
    // ln Gamma(2+e) = ln(1+e) + ln Gamma(1+e)
    let (e, extra) = if (x - 1.0).abs() < 0.25 {
        (x - 1.0, 0.0)
    } else {
        (x - 2.0, (x - 1.0).ln())
    };
    let mut sum = -EULER * e;
    // p runs through (-e)^k
    let mut p = -e;
    for (k, z) in ZETA.iter().enumerate().skip(2) {
        p *= -e;
        sum += z * p / k as f64;
    }
    // tail: zeta(k) ~ 1, remaining terms are the series of ln(1+e) - e + ...
    let mut k = ZETA.len();
    loop {
        p *= -e;
        let term = p / k as f64;
        sum += term;
        if term.abs() < 1e-18 || k > 200 {
            break;
        }
        k += 1;
    }
    sum + extra
}

/// Gamma function on the real line, including negative non-integers.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() || (x <= 0.0 && x == x.floor()) {
        return Err(Error::domain("gamma", format!("pole or NaN at x = {x}")));
    }
    if x > 0.0 {
        return Ok(ln_gamma_pos(x).exp());
    }
    let s = (PI * x).sin();
    Ok(PI / (s * ln_gamma_pos(1.0 - x).exp()))
}
