//! Fading primitives and the moment-matched approximations of cascaded
//! (user-IRS-BS) channel products.
//!
//! Rayleigh magnitudes use the standard parameterization
//! f(x) = x/sigma^2 exp(-x^2 / (2 sigma^2)), so E[X] = sigma sqrt(pi/2) and
//! E[X^2] = 2 sigma^2. Simulations run at unit power, sigma = 1/sqrt(2).

use crate::specfun::ln_gamma;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const UNIT_POWER_SIGMA: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Shape fitted to the product of two independent unit-scale Rayleighs.
pub const PRODUCT_GAMMA_KAPPA: f64 = 1.6467;
/// Scale fitted to the product of two independent unit-scale Rayleighs.
pub const PRODUCT_GAMMA_ZETA: f64 = 0.9539;

pub fn sample_rayleigh<R: Rng + ?Sized>(sigma: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    sigma * (-2.0 * (-u).ln_1p()).sqrt()
}

/// Unit-power complex Gaussian coefficient (Rayleigh magnitude, uniform phase).
pub fn sample_cn<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let mag = sample_rayleigh(UNIT_POWER_SIGMA, rng);
    let phase = 2.0 * PI * rng.random::<f64>();
    (mag, phase)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductMoments {
    /// sigma pi / 2 (linear in sigma).
    pub linear_mean: f64,
    /// 4 sigma^2 (1 - pi^2/16).
    pub linear_variance: f64,
    /// E[A]E[B] = sigma^2 pi / 2 for independent Rayleigh(sigma) A, B.
    pub mean: f64,
    /// 4 sigma^4 (1 - pi^2/16).
    pub variance: f64,
}

/// Moments of |g||f| for two independent Rayleigh(sigma) magnitudes. The
/// linear-in-sigma constants coincide with the exact ones only at sigma = 1.
pub fn rayleigh_product_moments(sigma: f64) -> ProductMoments {
    let s2 = sigma * sigma;
    ProductMoments {
        linear_mean: sigma * PI / 2.0,
        linear_variance: 4.0 * s2 * (1.0 - PI * PI / 16.0),
        mean: s2 * PI / 2.0,
        variance: 4.0 * s2 * s2 * (1.0 - PI * PI / 16.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaApproxParams {
    pub kappa: f64,
    pub zeta: f64,
}

impl GammaApproxParams {
    /// Same fit rescaled to the product of two Rayleigh(sigma) magnitudes.
    pub fn for_rayleigh_sigma(sigma: f64) -> Self {
        let g = gamma_approx_of_product();
        GammaApproxParams {
            kappa: g.kappa,
            zeta: g.zeta * sigma * sigma,
        }
    }

    /// Product law for the unit-power channels used in simulation.
    pub fn unit_power() -> Self {
        Self::for_rayleigh_sigma(UNIT_POWER_SIGMA)
    }

    pub fn mean(&self) -> f64 {
        self.kappa * self.zeta
    }

    pub fn variance(&self) -> f64 {
        self.kappa * self.zeta * self.zeta
    }
}

/// Gamma(kappa, zeta) fit to the product of two unit-scale Rayleighs.
pub fn gamma_approx_of_product() -> GammaApproxParams {
    GammaApproxParams {
        kappa: PRODUCT_GAMMA_KAPPA,
        zeta: PRODUCT_GAMMA_ZETA,
    }
}

/// Generalized gamma with density p/(a^d Gamma(d/p)) x^(d-1) exp(-(x/a)^p).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GGParams {
    pub a: f64,
    pub d: f64,
    pub p: f64,
}

impl GGParams {
    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let ln = self.p.ln() - self.d * self.a.ln() - ln_gamma(self.d / self.p).unwrap_or(f64::NAN)
            + (self.d - 1.0) * x.ln()
            - (x / self.a).powf(self.p);
        ln.exp()
    }
}

/// Law of X^2 for X ~ Gamma(kappa, zeta): GG(zeta^2, kappa/2, 1/2).
pub fn gg_from_gamma(g: &GammaApproxParams) -> GGParams {
    GGParams {
        a: g.zeta * g.zeta,
        d: g.kappa / 2.0,
        p: 0.5,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GgMoments {
    /// a Gamma((d+1)/p) / Gamma(d/p).
    pub mean: f64,
    /// a^2 Gamma((d+2)/p)/Gamma(d/p) - mean^2.
    pub variance: f64,
    /// zeta^4 (Gamma(kappa+4)/Gamma(kappa) - mean^2), a variant that
    /// multiplies the squared mean by zeta^4 a second time.
    pub variance_rescaled: f64,
}

pub fn gg_moments(p: &GGParams) -> GgMoments {
    let k = p.d / p.p;
    let lg = |x: f64| ln_gamma(x).unwrap_or(f64::NAN);
    let r1 = (lg((p.d + 1.0) / p.p) - lg(k)).exp();
    let r2 = (lg((p.d + 2.0) / p.p) - lg(k)).exp();
    let mean = p.a * r1;
    GgMoments {
        mean,
        variance: p.a * p.a * r2 - mean * mean,
        variance_rescaled: p.a * p.a * (r2 - mean * mean),
    }
}

/// Non-central chi-square description of Y = |sum_n X_n|^2, X_n the
/// element-wise cascaded magnitudes, one degree of freedom:
/// Y ~ scale * chi'^2_1(lambda).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoncentralChiSqStats {
    pub lambda_ncp: f64,
    /// 1 + lambda (normalized units).
    pub mean: f64,
    /// 2 (1 + 2 lambda) (normalized units).
    pub variance: f64,
    pub dof: u32,
    /// Multiplier from normalized units to channel units.
    pub scale: f64,
}

impl NoncentralChiSqStats {
    fn from_lambda(lambda: f64, scale: f64) -> Self {
        NoncentralChiSqStats {
            lambda_ncp: lambda,
            mean: 1.0 + lambda,
            variance: 2.0 * (1.0 + 2.0 * lambda),
            dof: 1,
            scale,
        }
    }

    /// E[Y] in channel units.
    pub fn raw_mean(&self) -> f64 {
        self.scale * self.mean
    }

    /// E[Y^2] in channel units.
    pub fn raw_second_moment(&self) -> f64 {
        self.scale * self.scale * (self.variance + self.mean * self.mean)
    }
}

/// lambda = (1/2) mu_x / sigma_x^2 from the linear-in-sigma product moments; the
/// element count cancels and the scale is left at one.
pub fn noncentral_stats(n: usize, sigma: f64) -> NoncentralChiSqStats {
    let pm = rayleigh_product_moments(sigma);
    let mu = n as f64 * pm.linear_mean;
    let var = n as f64 * pm.linear_variance;
    NoncentralChiSqStats::from_lambda(0.5 * mu / var, 1.0)
}

/// Scaling fixed by the Monte-Carlo oracle: sum_n X_n ~ Normal(N mu, N s^2)
/// with exact product moments, so Y = N s^2 chi'^2_1(N mu^2 / s^2). Its mean
/// (N mu)^2 + N s^2 is exact.
pub fn noncentral_stats_normalized(n: usize, sigma: f64) -> NoncentralChiSqStats {
    let pm = rayleigh_product_moments(sigma);
    let nf = n as f64;
    NoncentralChiSqStats::from_lambda(nf * pm.mean * pm.mean / pm.variance, nf * pm.variance)
}
