use super::quad::{integrate_adaptive, QuadratureSpec};
use crate::error::{Error, Result};
use num_complex::Complex64;

const OMEGA_EPS: f64 = 1e-8;
const MAX_DECADES: usize = 40;
const MAX_PANELS: usize = 1 << 14;

/// Pr(X >= threshold) from `char_fn(w) = E[exp(-j w X)]`:
///
/// 1/2 - (1/pi) int_0^inf Im[char_fn(w) exp(j w threshold)] / w dw.
///
/// The integral runs over [0, upper_cutoff] and then over successive
/// decades until two consecutive decades each contribute less than
/// abs_tol. Below `1e-8 * upper_cutoff` the integrand is frozen at its
/// value there (removable singularity at zero).
pub fn gil_pelaez_ccdf<F>(char_fn: F, threshold: f64, quad: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Complex64,
{
    Ok(gil_pelaez_raw(char_fn, threshold, quad)?.clamp(0.0, 1.0))
}

/// Unclamped variant, useful for diagnosing quadrature bias.
pub fn gil_pelaez_raw<F>(char_fn: F, threshold: f64, quad: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Complex64,
{
    quad.validate()?;
    if !threshold.is_finite() {
        return Err(Error::domain("gil_pelaez_ccdf", "threshold must be finite"));
    }
    let w_eps = OMEGA_EPS * quad.upper_cutoff;
    let integrand = |w: f64| {
        let w = w.max(w_eps);
        let v = char_fn(w) * Complex64::from_polar(1.0, w * threshold);
        v.im / w
    };
    // the integrand is O(1/w) in magnitude; tolerances apply to the probability
    let local = QuadratureSpec {
        abs_tol: quad.abs_tol * std::f64::consts::PI / 4.0,
        ..*quad
    };
    let first = integrate_adaptive(integrand, 0.0, quad.upper_cutoff, 16, &local)
        .map_err(|e| rescale_err(e, 0.0))?;
    let mut total = first.value;
    let mut lo = quad.upper_cutoff;
    let mut quiet = 0;
    for _ in 0..MAX_DECADES {
        let hi = lo * 10.0;
        // quadrature noise in a decade must sit well under the quiet test
        let fine = QuadratureSpec {
            abs_tol: local.abs_tol / 10.0,
            ..local
        };
        let part = decade(&integrand, lo, hi, threshold, &fine).map_err(|e| rescale_err(e, total))?;
        total += part;
        lo = hi;
        if part.abs() / std::f64::consts::PI < quad.abs_tol {
            quiet += 1;
            if quiet >= 2 {
                return Ok(0.5 - total / std::f64::consts::PI);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Quadrature {
        estimate: 0.5 - total / std::f64::consts::PI,
        error: f64::NAN,
        evaluations: MAX_DECADES,
    })
}

// One decade [lo, hi], cut into chunks of at most MAX_PANELS initial panels
// with about two oscillations of exp(j w threshold) per panel.
fn decade<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, threshold: f64, quad: &QuadratureSpec) -> Result<f64> {
    let cycles = (hi - lo) * threshold.abs() / (2.0 * std::f64::consts::PI);
    if cycles > 1e9 {
        return Err(Error::Quadrature {
            estimate: 0.0,
            error: f64::NAN,
            evaluations: 0,
        });
    }
    let panels = ((cycles / 2.0).ceil() as usize).max(64);
    let chunks = panels.div_ceil(MAX_PANELS);
    let per = panels.div_ceil(chunks);
    let w = (hi - lo) / chunks as f64;
    let mut sum = 0.0;
    for k in 0..chunks {
        let a = lo + w * k as f64;
        let b = if k + 1 == chunks { hi } else { a + w };
        // the characteristic function may oscillate faster than
        // exp(j w threshold); refine the initial panels when it does
        let mut panels = per;
        let mut tries = 0;
        loop {
            match integrate_adaptive(f, a, b, panels, quad) {
                Ok(r) => {
                    sum += r.value;
                    break;
                }
                Err(Error::Quadrature { .. }) if tries < 4 => {
                    panels *= 4;
                    tries += 1;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(sum)
}

fn rescale_err(e: Error, partial: f64) -> Error {
    match e {
        Error::Quadrature { estimate, error, evaluations } => Error::Quadrature {
            estimate: 0.5 - (partial + estimate) / std::f64::consts::PI,
            error: error / std::f64::consts::PI,
            evaluations,
        },
        other => other,
    }
}
