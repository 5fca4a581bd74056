//! Point-process sampling on the coverage disk, nearest-node distance laws
//! and the distance moments used by the interference approximation.
//!
//! Conventions: BSs sit at height `h_b`, IRSs at `h_r`, users on the
//! ground. Planar points are 2-D; 3-D distances add the height offsets.

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeploymentParams {
    /// BS intensity per m^2.
    pub lambda_b: f64,
    /// Number of IRSs on the disk (0 disables IRS interference).
    pub m: usize,
    pub radius: f64,
    pub h_b: f64,
    pub h_r: f64,
}

impl DeploymentParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_b > 0.0) {
            return Err(Error::domain("DeploymentParams", "lambda_B must be positive"));
        }
        if !(self.radius > 0.0) {
            return Err(Error::domain("DeploymentParams", "R must be positive"));
        }
        if !(self.h_r >= 0.0 && self.h_b > self.h_r) {
            return Err(Error::domain(
                "DeploymentParams",
                format!("need H_B > H_R >= 0, got H_B = {}, H_R = {}", self.h_b, self.h_r),
            ));
        }
        Ok(())
    }

    /// IRS intensity M / (pi R^2).
    pub fn lambda_r(&self) -> f64 {
        self.m as f64 / (PI * self.radius * self.radius)
    }

    pub fn dh(&self) -> f64 {
        self.h_b - self.h_r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub fn new(x: f64, y: f64) -> Self {
        PlanarPoint { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist2(&self, o: &PlanarPoint) -> f64 {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        dx * dx + dy * dy
    }

    pub fn polar(r: f64, angle: f64) -> Self {
        PlanarPoint {
            x: r * angle.cos(),
            y: r * angle.sin(),
        }
    }
}

/// Uniform point on the annulus r_in <= |x| <= r_out.
pub fn sample_uniform_annulus<R: Rng + ?Sized>(r_in: f64, r_out: f64, rng: &mut R) -> PlanarPoint {
    let u: f64 = rng.random();
    let r = (r_in * r_in + u * (r_out * r_out - r_in * r_in)).sqrt();
    let a = 2.0 * PI * rng.random::<f64>();
    PlanarPoint::polar(r, a)
}

/// Homogeneous PPP on the disk of radius `radius`.
pub fn sample_ppp_disk<R: Rng + ?Sized>(lambda: f64, radius: f64, rng: &mut R) -> Vec<PlanarPoint> {
    sample_ppp_annulus(lambda, 0.0, radius, rng)
}

/// Homogeneous PPP restricted to an annulus.
pub fn sample_ppp_annulus<R: Rng + ?Sized>(lambda: f64, r_in: f64, r_out: f64, rng: &mut R) -> Vec<PlanarPoint> {
    let mean = lambda * PI * (r_out * r_out - r_in * r_in);
    if !(mean > 0.0) {
        return Vec::new();
    }
    let n = Poisson::new(mean).map(|p| p.sample(rng) as usize).unwrap_or(0);
    (0..n).map(|_| sample_uniform_annulus(r_in, r_out, rng)).collect()
}

/// Exactly `m` i.i.d. uniform points on the disk.
pub fn sample_bpp_disk<R: Rng + ?Sized>(m: usize, radius: f64, rng: &mut R) -> Vec<PlanarPoint> {
    (0..m).map(|_| sample_uniform_annulus(0.0, radius, rng)).collect()
}

/// Density of the 3-D distance from a ground user at the centre to the
/// nearest of M uniform IRSs at height H_R.
pub fn nearest_irs_pdf(r: f64, p: &DeploymentParams) -> Result<f64> {
    if p.m == 0 {
        return Err(Error::domain("nearest_irs_pdf", "M must be at least 1"));
    }
    let hi = (p.radius * p.radius + p.h_r * p.h_r).sqrt();
    if !(r >= p.h_r && r <= hi) {
        return Err(Error::domain("nearest_irs_pdf", format!("r = {r} outside [{}, {hi}]", p.h_r)));
    }
    let m = p.m as f64;
    let r2 = p.radius * p.radius;
    let base = (1.0 - (r * r - p.h_r * p.h_r) / r2).max(0.0);
    Ok(2.0 * m * r / r2 * base.powf(m - 1.0))
}

pub fn nearest_irs_cdf(r: f64, p: &DeploymentParams) -> f64 {
    if r <= p.h_r {
        return 0.0;
    }
    let x = ((r * r - p.h_r * p.h_r) / (p.radius * p.radius)).min(1.0);
    1.0 - (1.0 - x).powf(p.m as f64)
}

/// Inverse CDF of the nearest-IRS distance.
pub fn nearest_irs_quantile(q: f64, p: &DeploymentParams) -> f64 {
    // 1 - (1-x)^M = q  =>  x = 1 - (1-q)^(1/M), computed without cancellation
    let x = -((1.0 - q).ln() / p.m as f64).exp_m1();
    (p.h_r * p.h_r + p.radius * p.radius * x).sqrt()
}

/// Density of the 3-D distance to the nearest BS of a PPP at height H_B.
pub fn nearest_bs_pdf(d: f64, p: &DeploymentParams) -> Result<f64> {
    if !(d >= p.h_b) {
        return Err(Error::domain("nearest_bs_pdf", format!("d = {d} below H_B = {}", p.h_b)));
    }
    Ok(2.0 * PI * p.lambda_b * d * (-PI * p.lambda_b * (d * d - p.h_b * p.h_b)).exp())
}

pub fn nearest_bs_cdf(d: f64, p: &DeploymentParams) -> f64 {
    if d <= p.h_b {
        return 0.0;
    }
    -(-PI * p.lambda_b * (d * d - p.h_b * p.h_b)).exp_m1()
}

/// Inverse CDF of the nearest-BS distance for vertical offset `h`.
pub fn nearest_ppp_quantile(q: f64, lambda: f64, h: f64) -> f64 {
    (h * h - (-q).ln_1p() / (PI * lambda)).sqrt()
}

pub fn nearest_bs_quantile(q: f64, p: &DeploymentParams) -> f64 {
    nearest_ppp_quantile(q, p.lambda_b, p.h_b)
}

/// IRS-to-BS distance under the assumption that the reflecting IRS sits
/// halfway between the user and BS j (planar distance `ell_j`).
pub fn midpoint_distance(ell_j: f64, p: &DeploymentParams) -> f64 {
    let dh = p.h_b - p.h_r;
    (0.25 * ell_j * ell_j + dh * dh).sqrt()
}

/// Which closed form to use for E[r^(-i alpha)] over a uniform IRS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RMomentForm {
    /// Closed form with exponent -1 - i alpha/2 on (H^2+R^2).
    #[default]
    SteepTail,
    /// Exact moment under the uniform-disk radial density 2 l / R^2.
    UniformDisk,
}

/// E[r^(-i alpha)] for the user-to-IRS distance of a uniformly placed IRS.
pub fn moment_r_inv_alpha(i: u32, alpha: f64, p: &DeploymentParams, form: RMomentForm) -> Result<f64> {
    let ia = i as f64 * alpha;
    if i < 1 || !(ia > 2.0) {
        return Err(Error::domain("moment_r_inv_alpha", format!("need i >= 1 and i alpha > 2, got i = {i}, alpha = {alpha}")));
    }
    let h2 = p.h_r * p.h_r;
    let r2 = p.radius * p.radius;
    let denom = (ia - 2.0) * r2;
    let near = 2.0 * p.h_r.powf(2.0 - ia) / denom;
    let far = match form {
        RMomentForm::SteepTail => 2.0 * (h2 + r2).powf(-1.0 - ia / 2.0) / denom,
        RMomentForm::UniformDisk => 2.0 * (h2 + r2).powf(1.0 - ia / 2.0) / denom,
    };
    Ok(near - far)
}

/// R -> infinity form 2 H_R^(2 - i alpha) / ((i alpha - 2) R^2).
pub fn moment_r_inv_alpha_limit(i: u32, alpha: f64, p: &DeploymentParams) -> Result<f64> {
    let ia = i as f64 * alpha;
    if i < 1 || !(ia > 2.0) {
        return Err(Error::domain("moment_r_inv_alpha_limit", format!("i alpha = {ia} must exceed 2")));
    }
    Ok(2.0 * p.h_r.powf(2.0 - ia) / ((ia - 2.0) * p.radius * p.radius))
}
