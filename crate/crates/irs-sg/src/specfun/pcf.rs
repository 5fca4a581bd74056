//! Parabolic cylinder functions of nonpositive order and the closely
//! related transform E[exp(-c X^2)] of a gamma variable.

use super::gamma::ln_gamma_pos;
use super::quad::{integrate_adaptive, QuadratureSpec};
use crate::error::{Error, Result};
use num_complex::Complex64;

fn inner_quad() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-12,
        abs_tol: 1e-300,
        max_subdivisions: 2000,
        upper_cutoff: 1.0,
    }
}

/// ln of (1/Gamma(nu)) int_0^inf u^(nu-1) exp(-u - eps u^2) du, i.e. of
/// E[exp(-eps X^2)] for X ~ Gamma(nu, 1).
pub fn ln_gamma_square_lt(nu: f64, eps: f64) -> Result<f64> {
    if !(nu > 0.0) || !(eps >= 0.0) {
        return Err(Error::domain("ln_gamma_square_lt", format!("nu = {nu}, eps = {eps}")));
    }
    if eps == 0.0 {
        return Ok(0.0);
    }
    // two-term cumulant expansion where the quadrature would lose 1 - L
    let m2 = nu * (nu + 1.0);
    if eps * m2 < 1e-6 {
        let m4 = m2 * (nu + 2.0) * (nu + 3.0);
        return Ok(-eps * m2 + 0.5 * eps * eps * (m4 - m2 * m2));
    }
    let j = envelope_integral(nu, Complex64::new(1.0, 0.0), Complex64::new(eps, 0.0))?;
    Ok(j.ln_scale + j.value.re.ln())
}

/// E[exp(-c X^2)] for X ~ Gamma(nu, zeta) and complex c with Re c >= 0.
///
/// The contour is rotated onto the ray through the saddle point of
/// (nu - 1) ln u - u - c u^2, so neither a large linear nor a large
/// quadratic phase makes the integrand oscillate near its peak.
pub fn gamma_square_lt_complex(nu: f64, zeta: f64, c: Complex64) -> Result<Complex64> {
    if !(nu > 0.0) || !(zeta > 0.0) || c.re < -1e-12 * c.norm() {
        return Err(Error::domain("gamma_square_lt_complex", format!("nu = {nu}, zeta = {zeta}, c = {c}")));
    }
    if c.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let m2 = nu * (nu + 1.0);
    let e = c * (zeta * zeta);
    if e.norm() * m2 < 1e-6 {
        let m4 = m2 * (nu + 2.0) * (nu + 3.0);
        return Ok((-e * m2 + e * e * (0.5 * (m4 - m2 * m2))).exp());
    }
    let half = 0.5 * e.arg().clamp(-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
    let psi = if nu > 1.0 {
        let saddle = 2.0 * (nu - 1.0) / (1.0 + (1.0 + e * (8.0 * (nu - 1.0))).sqrt());
        // the saddle lies between the two pure cases, arg in [-half, 0]
        let a = saddle.arg();
        if half >= 0.0 { a.clamp(-half, 0.0) } else { a.clamp(0.0, -half) }
    } else {
        -half
    };
    let dir = Complex64::from_polar(1.0, psi);
    let j = envelope_integral(nu, dir, e * dir * dir)?;
    let phase = Complex64::from_polar(1.0, psi * nu);
    Ok(phase * j.value * j.ln_scale.exp())
}

struct Scaled {
    value: Complex64,
    ln_scale: f64,
}

// (1/Gamma(nu)) int_0^inf r^(nu-1) exp(-rate r - q r^2) dr with Re(rate) > 0
// and Re(q) >= 0. Returned as value * exp(ln_scale) with the peak of the
// envelope r^(nu-1) exp(-Re(rate) r - Re(q) r^2) factored out.
fn envelope_integral(nu: f64, rate: Complex64, q: Complex64) -> Result<Scaled> {
    let a = rate.re;
    let b = q.re.max(0.0);
    let lg = ln_gamma_pos(nu);
    let quad = inner_quad();
    if nu <= 1.0 {
        // r = v^(1/nu) removes the endpoint singularity
        let inv = 1.0 / nu;
        // envelope a r + b r^2 = 700 fixes the upper limit
        let r_hi = 2.0 * 700.0 / (a + (a * a + 4.0 * b * 700.0).sqrt());
        let v_hi = r_hi.powf(nu);
        let f = |v: f64| {
            let r = v.powf(inv);
            (-(rate * r) - q * (r * r)).exp()
        };
        // |integrand| <= 1, so this absolute floor is relative to the envelope
        let quad = QuadratureSpec {
            abs_tol: 1e-14 * v_hi,
            ..quad
        };
        let res = integrate_adaptive(f, 0.0, v_hi, 8, &quad)?;
        return Ok(Scaled {
            value: res.value,
            ln_scale: -(lg + nu.ln()),
        });
    }
    let e = |r: f64| (nu - 1.0) * r.ln() - a * r - b * r * r;
    // envelope peak: 2 b r^2 + a r - (nu - 1) = 0
    let peak = 2.0 * (nu - 1.0) / (a + (a * a + 8.0 * b * (nu - 1.0)).sqrt());
    let e_peak = e(peak);
    let curv = (nu - 1.0) / (peak * peak) + 2.0 * b;
    let sigma = 1.0 / curv.sqrt();
    let drop = 46.0;
    let mut hi = peak + sigma;
    while e(hi) > e_peak - drop {
        hi = peak + 2.0 * (hi - peak);
    }
    let mut lo = (peak - sigma).max(0.0);
    while lo > 0.0 && e(lo) > e_peak - drop {
        lo = (peak - 2.0 * (peak - lo)).max(0.0);
    }
    let f = |r: f64| {
        if r <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let ex = Complex64::new((nu - 1.0) * r.ln() - e_peak, 0.0) - rate * r - q * (r * r);
        ex.exp()
    };
    // the envelope peaks at 1; residual oscillation can cancel the integral
    // below that, where only an absolute floor is meaningful
    let quad = QuadratureSpec {
        abs_tol: 1e-14 * (hi - lo),
        ..quad
    };
    let res = integrate_adaptive(f, lo, hi, 8, &quad)?;
    Ok(Scaled {
        value: res.value,
        ln_scale: e_peak - lg,
    })
}

/// Parabolic cylinder function D_order(z) for order <= 0 and z > 0, from
/// D_{-nu}(z) = exp(-z^2/4)/Gamma(nu) int_0^inf t^(nu-1) exp(-t^2/2 - z t) dt.
pub fn parabolic_cylinder_d(order: f64, z: f64) -> Result<f64> {
    Ok(ln_parabolic_cylinder_d(order, z)?.exp())
}

/// Natural log of D_order(z); D is positive on this branch.
pub fn ln_parabolic_cylinder_d(order: f64, z: f64) -> Result<f64> {
    if !(order <= 0.0) {
        return Err(Error::domain("parabolic_cylinder_d", format!("order = {order} must be <= 0")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain("parabolic_cylinder_d", format!("z = {z} must be positive")));
    }
    let nu = -order;
    if nu == 0.0 {
        return Ok(-0.25 * z * z);
    }
    // t = u / z turns the integral into the gamma-square transform
    let ln_j = ln_gamma_square_lt(nu, 0.5 / (z * z))?;
    Ok(-0.25 * z * z - nu * z.ln() + ln_j)
}
