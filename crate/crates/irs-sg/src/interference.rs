//! Laplace transforms of aggregate interference.
//!
//! BS interference is the exact PGFL of a PPP outside the exclusion ball of
//! radius d0. IRS interference follows the two-level Gaussian model: per BS
//! j, the sum over IRSs Z_j is taken Gaussian with moments (mu_Z, sigma_Z^2)
//! and every reflecting IRS is placed halfway between the user and BS j.

use crate::channel::{noncentral_stats, noncentral_stats_normalized, rayleigh_product_moments, NoncentralChiSqStats};
use crate::error::{Error, Result};
use crate::geometry::{moment_r_inv_alpha, DeploymentParams, RMomentForm};
use crate::specfun::{gauss_2f1, integrate_adaptive, QuadratureSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Transform of the BS interference seen beyond distance d0:
/// exp(-2 pi lambda d0^(2-alpha) s P beta^2 / (alpha-2) 2F1(1, 1-2/alpha; 2-2/alpha; -s P beta^2 d0^-alpha)).
pub fn lt_bs_interference(s: f64, d0: f64, lambda_b: f64, p_tx: f64, alpha: f64, beta_gain: f64) -> Result<f64> {
    check_bs_args(s, d0, alpha)?;
    if s == 0.0 {
        return Ok(1.0);
    }
    let k = p_tx * beta_gain * beta_gain;
    if alpha == 4.0 && (s * k).sqrt() / (d0 * d0) < 1.0 {
        return lt_bs_interference_alpha4(s, d0, lambda_b, p_tx, beta_gain);
    }
    lt_bs_interference_general(s, d0, lambda_b, p_tx, alpha, beta_gain)
}

fn check_bs_args(s: f64, d0: f64, alpha: f64) -> Result<()> {
    if !(alpha > 2.0) {
        return Err(Error::domain("lt_bs_interference", format!("alpha = {alpha} must exceed 2")));
    }
    if !(s >= 0.0) || !(d0 > 0.0) {
        return Err(Error::domain("lt_bs_interference", format!("s = {s}, d0 = {d0}")));
    }
    Ok(())
}

/// Hypergeometric path, valid for every alpha > 2.
pub fn lt_bs_interference_general(s: f64, d0: f64, lambda_b: f64, p_tx: f64, alpha: f64, beta_gain: f64) -> Result<f64> {
    check_bs_args(s, d0, alpha)?;
    let k = s * p_tx * beta_gain * beta_gain;
    let w = k * d0.powf(-alpha);
    let f = gauss_2f1(1.0, 1.0 - 2.0 / alpha, 2.0 - 2.0 / alpha, -w)?;
    Ok((-2.0 * PI * lambda_b * d0.powf(2.0 - alpha) * k / (alpha - 2.0) * f).exp())
}

/// alpha = 4: exp(-pi lambda sqrt(s P beta^2) arctan(sqrt(s P beta^2) / d0^2)).
pub fn lt_bs_interference_alpha4(s: f64, d0: f64, lambda_b: f64, p_tx: f64, beta_gain: f64) -> Result<f64> {
    check_bs_args(s, d0, 4.0)?;
    let q = (s * p_tx).sqrt() * beta_gain;
    Ok((-PI * lambda_b * q * (q / (d0 * d0)).atan()).exp())
}

/// Complex-argument transform (Re s >= 0), for characteristic functions.
pub fn lt_bs_interference_complex(s: Complex64, d0: f64, lambda_b: f64, p_tx: f64, alpha: f64, beta_gain: f64) -> Result<Complex64> {
    if !(alpha > 2.0) || !(d0 > 0.0) {
        return Err(Error::domain("lt_bs_interference_complex", format!("alpha = {alpha}, d0 = {d0}")));
    }
    let w = s * (p_tx * beta_gain * beta_gain * d0.powf(-alpha));
    if w.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let exponent = if alpha == 4.0 {
        let q = w.sqrt();
        q * q.atan() * (PI * lambda_b * d0 * d0)
    } else {
        // 2 pi lambda d0^2 w/(alpha-2) int_0^1 du / (1 + w u^(1/b)), b = 1 - 2/alpha
        let b = 1.0 - 2.0 / alpha;
        let inv_b = 1.0 / b;
        let quad = QuadratureSpec {
            rel_tol: 1e-11,
            abs_tol: 1e-300,
            max_subdivisions: 4000,
            upper_cutoff: 1.0,
        };
        let r = integrate_adaptive(|u: f64| (w * u.powf(inv_b) + 1.0).inv(), 0.0, 1.0, 8, &quad)?;
        w * r.value * (2.0 * PI * lambda_b * d0 * d0 / (alpha - 2.0))
    };
    Ok((-exponent).exp())
}

/// One reflected path from a BS through an IRS to the user.
#[derive(Debug, Clone, Copy)]
pub struct ReflectedLink<'a> {
    /// P beta^2 r^-alpha t^-alpha.
    pub path_gain: f64,
    pub g_mag: &'a [f64],
    pub f_mag: &'a [f64],
    /// Residual phases beta_n toward the user.
    pub residual: &'a [f64],
}

impl ReflectedLink<'_> {
    pub fn power(&self) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..self.g_mag.len() {
            acc += Complex64::from_polar(self.g_mag[n] * self.f_mag[n], self.residual[n]);
        }
        self.path_gain * acc.norm_sqr()
    }

    /// Power with every residual phase set to zero.
    pub fn worst_case_power(&self) -> f64 {
        let a: f64 = self.g_mag.iter().zip(self.f_mag).map(|(g, f)| g * f).sum();
        self.path_gain * a * a
    }
}

/// Worst-case (phase-aligned) IRS interference for a set of reflected links.
pub fn worst_case_ir_bound(links: &[ReflectedLink<'_>]) -> f64 {
    links.iter().map(|l| l.worst_case_power()).sum()
}

/// Phase-bearing IRS interference for the same links.
pub fn phase_bearing_ir(links: &[ReflectedLink<'_>]) -> f64 {
    links.iter().map(|l| l.power()).sum()
}

/// Phase model for interfering IRSs toward the typical user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InterfererModel {
    /// All residual phases zero (upper bound).
    #[default]
    WorstCase,
    /// Independent uniform residual phases.
    RandomPhase,
}

/// Moment convention for Z_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ZConvention {
    /// mu_Z = E[r^-a] (M t^2)^(-a/2) (1 + lambda), sigma_Z^2 = 2 V[r^-a] (M t^2)^-a (1 + 2 lambda),
    /// lambda = mu_x / (2 sigma_x^2).
    LambdaScaled,
    /// Moments of Z_j = sum_m r_m^-a t^-a Y_m with independent r_m, Y_m.
    #[default]
    Consistent,
}

/// Distribution fitted to the first two moments of Z_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ZLaw {
    /// Gaussian: per-BS factor exp(-k1 X - k2 X^2).
    Gaussian,
    /// Gamma with shape mu^2/sigma^2 and scale sigma^2/mu: per-BS factor
    /// (1 + s P beta^2 theta)^-k. Nonnegative, so the transform is a
    /// Laplace transform everywhere in Re s >= 0.
    #[default]
    Gamma,
}

/// First two moments of the per-IRS amplitude factor Y = |sum_n X_n e^{j beta_n}|^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YMoments {
    pub mean: f64,
    pub second: f64,
}

impl YMoments {
    /// Aligned phases, non-central chi-square description.
    pub fn worst_case(n: usize, sigma: f64) -> Self {
        Self::from_noncentral(&noncentral_stats_normalized(n, sigma))
    }

    pub fn from_noncentral(nc: &NoncentralChiSqStats) -> Self {
        YMoments {
            mean: nc.raw_mean(),
            second: nc.raw_second_moment(),
        }
    }

    /// Independent uniform residual phases; exact for Rayleigh(sigma) links.
    pub fn random_phase(n: usize, sigma: f64) -> Self {
        let s2 = sigma * sigma;
        let ex2 = 4.0 * s2 * s2;
        let ex4 = 64.0 * s2 * s2 * s2 * s2;
        let nf = n as f64;
        YMoments {
            mean: nf * ex2,
            second: nf * ex4 + 2.0 * nf * (nf - 1.0) * ex2 * ex2,
        }
    }

    pub fn for_model(model: InterfererModel, n: usize, sigma: f64) -> Self {
        match model {
            InterfererModel::WorstCase => Self::worst_case(n, sigma),
            InterfererModel::RandomPhase => Self::random_phase(n, sigma),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZStats {
    pub mu_z: f64,
    pub var_z: f64,
    pub m_eff: usize,
}

/// Moments of Z_j under the lambda-scaled convention.
pub fn z_stats(m_eff: usize, t_j: f64, alpha: f64, nc: &NoncentralChiSqStats, r_moments: (f64, f64)) -> Result<ZStats> {
    if m_eff < 1 {
        return Err(Error::domain("z_stats", "M_eff must be at least 1"));
    }
    let (e1, e2) = r_moments;
    let base = m_eff as f64 * t_j * t_j;
    Ok(ZStats {
        mu_z: e1 * base.powf(-alpha / 2.0) * (1.0 + nc.lambda_ncp),
        var_z: 2.0 * (e2 - e1 * e1) * base.powf(-alpha) * (1.0 + 2.0 * nc.lambda_ncp),
        m_eff,
    })
}

/// Moments of Z_j = sum over M_eff IRSs of r^-a t^-a Y.
pub fn z_stats_consistent(m_eff: usize, t_j: f64, alpha: f64, y: &YMoments, r_moments: (f64, f64)) -> Result<ZStats> {
    if m_eff < 1 {
        return Err(Error::domain("z_stats_consistent", "M_eff must be at least 1"));
    }
    let (e1, e2) = r_moments;
    let m = m_eff as f64;
    let ta = t_j.powf(-alpha);
    Ok(ZStats {
        mu_z: m * e1 * ta * y.mean,
        var_z: m * ta * ta * (e2 * y.second - e1 * e1 * y.mean * y.mean),
        m_eff,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkMode {
    /// IRS-assisted user: the serving IRS is excluded (M - 1 interferers).
    Indirect,
    /// Directly served user: all M IRSs interfere.
    Direct,
}

/// Everything that fixes the IRS-interference transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IrsInterferenceSpec {
    pub deployment: DeploymentParams,
    pub mode: LinkMode,
    pub p_tx: f64,
    pub alpha: f64,
    pub beta_gain: f64,
    pub n_elements: usize,
    pub rayleigh_sigma: f64,
    pub convention: ZConvention,
    pub z_law: ZLaw,
    pub interferer: InterfererModel,
    pub r_form: RMomentForm,
    /// Lower limit of the planar PGFL integral (0 = none).
    pub exclusion_radius: f64,
    pub taylor_order: usize,
    pub rel_tol: f64,
}

/// Evaluator of the IRS-interference transform
/// exp(-2 pi lambda (4/alpha) sum_i b_i/(i - 2/alpha) (X_R^(i-2/alpha) - X_0^(i-2/alpha))),
/// b_i the Taylor coefficients of exp(-k1 X - k2 X^2), X = t^-alpha.
#[derive(Debug, Clone)]
pub struct IrsInterference {
    spec: IrsInterferenceSpec,
    /// mu_Z t^alpha (independent of t).
    mu_unit: f64,
    /// sigma_Z^2 t^(2 alpha).
    var_unit: f64,
    x0: f64,
    xr: f64,
    m_eff: usize,
}

/// Beyond this |k1| X0 + |k2| X0^2 the Taylor series loses all digits to
/// cancellation in double precision.
const SERIES_CONDITION_LIMIT: f64 = 8.0;
const MAX_TAYLOR_ORDER: usize = 1280;

impl IrsInterference {
    pub fn new(spec: IrsInterferenceSpec) -> Result<Self> {
        spec.deployment.validate()?;
        let m_eff = match spec.mode {
            LinkMode::Indirect => spec.deployment.m.saturating_sub(1),
            LinkMode::Direct => spec.deployment.m,
        };
        let dh = spec.deployment.dh();
        let a = spec.alpha;
        let ell_ex = spec.exclusion_radius.max(0.0);
        let x0 = (0.25 * ell_ex * ell_ex + dh * dh).powf(-a / 2.0);
        let r = spec.deployment.radius;
        let xr = (0.25 * r * r + dh * dh).powf(-a / 2.0);
        let (mu_unit, var_unit) = if m_eff == 0 {
            (0.0, 0.0)
        } else {
            let e1 = moment_r_inv_alpha(1, a, &spec.deployment, spec.r_form)?;
            let e2 = moment_r_inv_alpha(2, a, &spec.deployment, spec.r_form)?;
            // moments are evaluated at t = 1, which leaves the t-free units
            let z = match spec.convention {
                ZConvention::LambdaScaled => {
                    let nc = noncentral_stats(spec.n_elements, spec.rayleigh_sigma);
                    z_stats(m_eff, 1.0, a, &nc, (e1, e2))?
                }
                ZConvention::Consistent => {
                    let y = YMoments::for_model(spec.interferer, spec.n_elements, spec.rayleigh_sigma);
                    z_stats_consistent(m_eff, 1.0, a, &y, (e1, e2))?
                }
            };
            (z.mu_z, z.var_z.max(0.0))
        };
        Ok(IrsInterference {
            spec,
            mu_unit,
            var_unit,
            x0,
            xr,
            m_eff,
        })
    }

    pub fn spec(&self) -> &IrsInterferenceSpec {
        &self.spec
    }

    pub fn m_eff(&self) -> usize {
        self.m_eff
    }

    /// (mu_Z, sigma_Z^2) at midpoint distance t.
    pub fn z_at(&self, t: f64) -> (f64, f64) {
        let ta = t.powf(-self.spec.alpha);
        (self.mu_unit * ta, self.var_unit * ta * ta)
    }

    /// X_0 and X_R of the series.
    pub fn x_bounds(&self) -> (f64, f64) {
        (self.x0, self.xr)
    }

    fn gain(&self) -> f64 {
        self.spec.p_tx * self.spec.beta_gain * self.spec.beta_gain
    }

    /// k1(s) = mu_Z s P beta^2 / t^-alpha.
    pub fn k1(&self, s: f64) -> f64 {
        self.mu_unit * s * self.gain()
    }

    /// k2(s) = sigma_Z^2 s^2 P^2 beta^4 / (2 t^-2alpha).
    pub fn k2(&self, s: f64) -> f64 {
        0.5 * self.var_unit * s * s * self.gain() * self.gain()
    }

    /// Mean aggregate interference under the model (Campbell).
    pub fn mean_interference(&self) -> f64 {
        let r = self.spec.deployment.radius;
        let dh = self.spec.deployment.dh();
        let a = self.spec.alpha;
        let ell_ex = self.spec.exclusion_radius.max(0.0);
        // int l (l^2/4 + dh^2)^(-a/2) dl = 2 [u^(1-a/2)/(1-a/2)], u = l^2/4 + dh^2
        let u = |l: f64| 0.25 * l * l + dh * dh;
        let prim = |l: f64| 2.0 * u(l).powf(1.0 - a / 2.0) / (1.0 - a / 2.0);
        2.0 * PI * self.spec.deployment.lambda_b * self.mu_unit * self.gain() * (prim(r) - prim(ell_ex))
    }

    /// Real-argument transform, clamped to (0, 1].
    pub fn lt(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(Error::domain("lt_irs_interference", format!("s = {s} must be >= 0")));
        }
        if s == 0.0 || self.m_eff == 0 {
            return Ok(1.0);
        }
        let integral = match self.gamma_shape() {
            Some(_) => self.gamma_integral(Complex64::new(s, 0.0))?,
            None => self.pgfl_integral(Complex64::new(self.k1(s), 0.0), Complex64::new(self.k2(s), 0.0))?,
        };
        let v = (-2.0 * PI * self.spec.deployment.lambda_b * integral.re).exp();
        Ok(v.clamp(f64::MIN_POSITIVE, 1.0))
    }

    /// Transform at complex s with Re s >= 0. The Gaussian term uses
    /// k2 = sigma_Z^2 |s|^2 P^2 / 2 so that on the imaginary axis the
    /// per-BS factor is the Gaussian characteristic function.
    pub fn lt_complex(&self, s: Complex64) -> Result<Complex64> {
        if s.norm() == 0.0 || self.m_eff == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let integral = if self.gamma_shape().is_some() {
            self.gamma_integral(s)?
        } else {
            let k1 = s * (self.mu_unit * self.gain());
            let k2 = Complex64::new(0.5 * self.var_unit * s.norm_sqr() * self.gain() * self.gain(), 0.0);
            self.pgfl_integral(k1, k2)?
        };
        Ok((-integral * (2.0 * PI * self.spec.deployment.lambda_b)).exp())
    }

    /// int_{l_ex}^{R} (1 - exp(-k1 X - k2 X^2)) l dl, X = (l^2/4 + dh^2)^(-alpha/2),
    /// through the Taylor series when it is well conditioned and by direct
    /// quadrature otherwise.
    fn pgfl_integral(&self, k1: Complex64, k2: Complex64) -> Result<Complex64> {
        let cond = k1.norm() * self.x0 + k2.norm() * self.x0 * self.x0;
        if cond <= SERIES_CONDITION_LIMIT {
            if let Ok(v) = self.series(k1, k2) {
                return Ok(v);
            }
        }
        self.quadrature(k1, k2)
    }

    /// Taylor-series form of the PGFL integral.
    pub fn series(&self, k1: Complex64, k2: Complex64) -> Result<Complex64> {
        let a = self.spec.alpha;
        let e = 2.0 / a;
        let rel_tol = self.spec.rel_tol;
        let mut order = self.spec.taylor_order.max(1);
        let (mut sum, _) = self.series_sum(k1, k2, order, e);
        // accept once doubling the order leaves the sum unchanged
        loop {
            if order >= MAX_TAYLOR_ORDER {
                return Err(Error::NonConvergence {
                    func: "lt_irs_interference",
                    terms: order,
                    last_term: f64::NAN,
                    partial: sum.norm() * 4.0 / a,
                });
            }
            order *= 2;
            let (next, tail) = self.series_sum(k1, k2, order, e);
            let scale = next.norm().max(1e-300);
            if (next - sum).norm() <= rel_tol * scale && tail.norm() <= rel_tol * scale {
                return Ok(next * (4.0 / a));
            }
            sum = next;
        }
    }

    // sum_{i=1}^{order} b_i/(i-e) (X_R^(i-e) - X_0^(i-e)), and the last term
    fn series_sum(&self, k1: Complex64, k2: Complex64, order: usize, e: f64) -> (Complex64, Complex64) {
        let (x0, xr) = (self.x0, self.xr);
        // carry b_i X^i directly to avoid overflow of X^i
        let mut p0 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let mut pr = p0;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(0.0, 0.0);
        let x0e = x0.powf(-e);
        let xre = xr.powf(-e);
        for i in 1..=order {
            let fi = i as f64;
            let b0 = (-(k1 * x0) * p0[1] - k2 * (x0 * x0) * p0[0] * 2.0) / fi;
            let br = (-(k1 * xr) * pr[1] - k2 * (xr * xr) * pr[0] * 2.0) / fi;
            p0 = [p0[1], b0];
            pr = [pr[1], br];
            term = (br * xre - b0 * x0e) / (fi - e);
            sum += term;
        }
        (sum, term)
    }

    // shape of the gamma law, None when the Gaussian form applies (or Z is
    // deterministic, where both coincide)
    fn gamma_shape(&self) -> Option<f64> {
        match self.spec.z_law {
            ZLaw::Gamma if self.var_unit > 0.0 && self.mu_unit > 0.0 => Some(self.mu_unit * self.mu_unit / self.var_unit),
            _ => None,
        }
    }

    /// int_{l_ex}^{R} (1 - (1 + c X)^-k) l dl under the gamma law,
    /// c = s P beta^2 sigma^2/mu (per unit X).
    pub fn gamma_integral(&self, s: Complex64) -> Result<Complex64> {
        let k = self
            .gamma_shape()
            .ok_or_else(|| Error::domain("lt_irs_interference", "gamma law needs mu_Z > 0 and sigma_Z > 0".to_string()))?;
        let c = s * (self.gain() * self.var_unit / self.mu_unit);
        let dh = self.spec.deployment.dh();
        let a = self.spec.alpha;
        let quad = QuadratureSpec {
            rel_tol: self.spec.rel_tol.max(1e-12),
            abs_tol: 1e-300,
            max_subdivisions: 4000,
            upper_cutoff: 1.0,
        };
        let ell_ex = self.spec.exclusion_radius.max(0.0);
        let f = |l: f64| {
            let x = (0.25 * l * l + dh * dh).powf(-a / 2.0);
            let cx = c * x;
            let lg = if cx.im == 0.0 { Complex64::new(cx.re.ln_1p(), 0.0) } else { (cx + 1.0).ln() };
            let one_minus = if lg.im == 0.0 {
                Complex64::new(-(-k * lg.re).exp_m1(), 0.0)
            } else {
                Complex64::new(1.0, 0.0) - (-k * lg).exp()
            };
            one_minus * l
        };
        let r = integrate_adaptive(f, ell_ex, self.spec.deployment.radius, 32, &quad)?;
        Ok(r.value)
    }

    /// Direct quadrature of the PGFL integrand.
    pub fn quadrature(&self, k1: Complex64, k2: Complex64) -> Result<Complex64> {
        let dh = self.spec.deployment.dh();
        let a = self.spec.alpha;
        let quad = QuadratureSpec {
            rel_tol: self.spec.rel_tol.max(1e-12),
            abs_tol: 1e-300,
            max_subdivisions: 4000,
            upper_cutoff: 1.0,
        };
        let ell_ex = self.spec.exclusion_radius.max(0.0);
        let f = |l: f64| {
            let x = (0.25 * l * l + dh * dh).powf(-a / 2.0);
            let p = k1 * x + k2 * (x * x);
            let one_minus = if p.im == 0.0 {
                Complex64::new(-(-p.re).exp_m1(), 0.0)
            } else {
                Complex64::new(1.0, 0.0) - (-p).exp()
            };
            one_minus * l
        };
        let r = integrate_adaptive(f, ell_ex, self.spec.deployment.radius, 32, &quad)?;
        Ok(r.value)
    }
}

/// Convenience wrapper: IRS-interference transform at real s.
pub fn lt_irs_interference(s: f64, spec: &IrsInterferenceSpec) -> Result<f64> {
    IrsInterference::new(*spec)?.lt(s)
}

/// Mean of |g||f| for the given Rayleigh scale, re-exported for callers
/// building interference moments by hand.
pub fn cascade_amplitude_mean(sigma: f64) -> f64 {
    rayleigh_product_moments(sigma).mean
}
