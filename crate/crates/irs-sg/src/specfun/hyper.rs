use super::gamma::gamma;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 200_000;

/// Gauss hypergeometric function 2F1(a, b; c; z) on the branch z <= 0.
///
/// Direct series for |z| < 1/2, Pfaff transformation onto z/(z-1) for
/// -2 <= z <= -1/2, and the 1/z connection formula further out (falling
/// back to Pfaff when b - a is an integer).
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if c <= 0.0 && c == c.floor() {
        return Err(Error::domain("gauss_2f1", format!("c = {c} is a nonpositive integer")));
    }
    if !(z <= 0.0) || !z.is_finite() {
        return Err(Error::domain("gauss_2f1", format!("z = {z} outside the supported branch z <= 0")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > -0.5 {
        return series(a, b, c, z);
    }
    let ba = b - a;
    if z < -2.0 && ba != ba.round() {
        return inverse_argument(a, b, c, z);
    }
    pfaff(a, b, c, z)
}

fn pfaff(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    // 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
    let w = z / (z - 1.0);
    Ok((1.0 - z).powf(-a) * series(a, c - b, c, w)?)
}

fn inverse_argument(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let w = 1.0 / z;
    let mz = -z;
    let gc = gamma(c)?;
    let t1 = if is_pole(b) || is_pole(c - a) {
        0.0
    } else {
        gc * gamma(b - a)? / (gamma(b)? * gamma(c - a)?)
            * mz.powf(-a)
            * series(a, a - c + 1.0, a - b + 1.0, w)?
    };
    let t2 = if is_pole(a) || is_pole(c - b) {
        0.0
    } else {
        gc * gamma(a - b)? / (gamma(a)? * gamma(c - b)?)
            * mz.powf(-b)
            * series(b, b - c + 1.0, b - a + 1.0, w)?
    };
    Ok(t1 + t2)
}

// 1/Gamma vanishes at the poles.
fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term == 0.0 || (term.abs() <= 1e-17 * sum.abs() && n > 2) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        func: "gauss_2f1",
        terms: MAX_TERMS,
        last_term: term,
        partial: sum,
    })
}
