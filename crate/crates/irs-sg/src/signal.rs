//! Desired signal of an IRS-assisted user: phase configuration, received
//! power and its Laplace transform.
//!
//! Channel convention per element n: user-IRS coefficient |g_n| e^{-j phi_n},
//! IRS-BS coefficient |f_n| e^{-j psi_n}, IRS phase theta_n. The residual
//! phase is beta_n = theta_n - psi_n - phi_n.

use crate::channel::GammaApproxParams;
use crate::error::{Error, Result};
use crate::specfun::{gamma_square_lt_complex, ln_gamma_square_lt};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseMode {
    Optimal,
    Random,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseConfig {
    /// Angles in [0, 2 pi).
    pub thetas: Vec<f64>,
    pub mode: PhaseMode,
}

impl PhaseConfig {
    pub fn custom(thetas: Vec<f64>) -> Self {
        PhaseConfig {
            thetas: thetas.into_iter().map(wrap).collect(),
            mode: PhaseMode::Custom,
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        PhaseConfig {
            thetas: (0..n).map(|_| 2.0 * PI * rng.random::<f64>()).collect(),
            mode: PhaseMode::Random,
        }
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

pub fn wrap(a: f64) -> f64 {
    let t = a.rem_euclid(2.0 * PI);
    if t >= 2.0 * PI {
        0.0
    } else {
        t
    }
}

/// Element-wise fading of one cascaded link.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CascadeFading {
    pub g_mag: Vec<f64>,
    pub g_phase: Vec<f64>,
    pub f_mag: Vec<f64>,
    pub f_phase: Vec<f64>,
}

impl CascadeFading {
    pub fn len(&self) -> usize {
        self.g_mag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g_mag.is_empty()
    }

    fn check(&self) -> Result<()> {
        let n = self.g_mag.len();
        for len in [self.g_phase.len(), self.f_mag.len(), self.f_phase.len()] {
            if len != n {
                return Err(Error::LengthMismatch { expected: n, got: len });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CascadeGeometry {
    /// User to serving IRS, m.
    pub r00: f64,
    /// Serving IRS to its BS, m.
    pub t0j: f64,
    pub alpha: f64,
    /// Transmit power, W.
    pub p_tx: f64,
    /// Reference channel gain at 1 m; enters squared as in the cascaded
    /// channel definition.
    pub beta_gain: f64,
}

impl CascadeGeometry {
    /// P beta^2 r^-alpha t^-alpha.
    pub fn scale(&self) -> f64 {
        self.p_tx * self.beta_gain * self.beta_gain * self.r00.powf(-self.alpha) * self.t0j.powf(-self.alpha)
    }
}

/// Phases that zero every residual: theta_n = psi_n + phi_n.
pub fn optimal_phases(g_phases: &[f64], f_phases: &[f64]) -> Result<PhaseConfig> {
    if g_phases.len() != f_phases.len() {
        return Err(Error::LengthMismatch {
            expected: g_phases.len(),
            got: f_phases.len(),
        });
    }
    Ok(PhaseConfig {
        thetas: g_phases.iter().zip(f_phases).map(|(p, q)| wrap(p + q)).collect(),
        mode: PhaseMode::Optimal,
    })
}

pub fn residual_phases(fading: &CascadeFading, phases: &PhaseConfig) -> Result<Vec<f64>> {
    fading.check()?;
    if phases.len() != fading.len() {
        return Err(Error::LengthMismatch {
            expected: fading.len(),
            got: phases.len(),
        });
    }
    Ok((0..fading.len())
        .map(|n| phases.thetas[n] - fading.f_phase[n] - fading.g_phase[n])
        .collect())
}

/// |sum_n |f_n||g_n| e^{j beta_n}|^2.
pub fn signal_power_normalized(fading: &CascadeFading, phases: &PhaseConfig) -> Result<f64> {
    let beta = residual_phases(fading, phases)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, b) in beta.iter().enumerate() {
        acc += Complex64::from_polar(fading.f_mag[n] * fading.g_mag[n], *b);
    }
    Ok(acc.norm_sqr())
}

/// Received power P beta^2 r^-alpha t^-alpha |sum_n |f_n||g_n| e^{j beta_n}|^2.
pub fn signal_power(fading: &CascadeFading, phases: &PhaseConfig, geo: &CascadeGeometry) -> Result<f64> {
    Ok(geo.scale() * signal_power_normalized(fading, phases)?)
}

/// Pairwise weights a_q = cos(beta_n - beta_k), q = n * N + k.
#[derive(Debug, Clone, PartialEq)]
pub struct AqWeights {
    pub n: usize,
    pub a: Vec<f64>,
}

impl AqWeights {
    pub fn aligned(n: usize) -> Self {
        AqWeights { n, a: vec![1.0; n * n] }
    }

    pub fn sum(&self) -> f64 {
        self.a.iter().sum()
    }
}

pub fn aq_weights(beta_residuals: &[f64]) -> AqWeights {
    let n = beta_residuals.len();
    let mut a = Vec::with_capacity(n * n);
    for bn in beta_residuals {
        for bk in beta_residuals {
            a.push((bn - bk).cos());
        }
    }
    AqWeights { n, a }
}

/// How the optimal-phase signal is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SignalModel {
    /// N^2 independent generalized-gamma terms weighted by |a_q|.
    PairwiseGg,
    /// (sum_n X_n)^2 with sum_n X_n ~ Gamma(N kappa, zeta): the squared
    /// coherent amplitude, itself generalized gamma with d = N kappa / 2.
    #[default]
    CoherentGg,
}

/// E[exp(-c X^2)], X ~ Gamma(shape, zeta). Equal to
/// (2 zeta^2 c)^(-shape/2) exp(1/(8 zeta^2 c)) D_{-shape}(1/sqrt(2 zeta^2 c))
/// but evaluated without the overflowing intermediate factors.
pub fn gg_factor(c: f64, shape: f64, zeta: f64) -> Result<f64> {
    if c < 1e-300 {
        return Ok(1.0);
    }
    Ok(ln_gamma_square_lt(shape, c * zeta * zeta)?.exp())
}

/// Same factor computed literally from the parabolic cylinder function.
pub fn gg_factor_closed_form(c: f64, shape: f64, zeta: f64) -> Result<f64> {
    let x = 2.0 * zeta * zeta * c;
    let ln = -0.5 * shape * x.ln() + 1.0 / (4.0 * x) + crate::specfun::ln_parabolic_cylinder_d(-shape, 1.0 / x.sqrt())?;
    Ok(ln.exp())
}

/// Laplace transform of S_R0 in the pairwise form: the product over q of
/// E[exp(-s a_q_hat X^2)], a_q_hat = P beta^2 r^-alpha t^-alpha |a_q|.
pub fn lt_signal(s: f64, geo: &CascadeGeometry, weights: &AqWeights, law: &GammaApproxParams) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::domain("lt_signal", format!("s = {s} must be >= 0")));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let base = s * geo.scale();
    let n = weights.n;
    let mut ln = 0.0;
    // a is symmetric with unit diagonal; each off-diagonal value counts twice
    ln += n as f64 * ln_factor(base, law)?;
    for i in 0..n {
        for k in (i + 1)..n {
            let a = weights.a[i * n + k].abs();
            if a * base < 1e-12 {
                continue;
            }
            ln += 2.0 * ln_factor(base * a, law)?;
        }
    }
    Ok(ln.exp())
}

fn ln_factor(c: f64, law: &GammaApproxParams) -> Result<f64> {
    if c < 1e-12 {
        return Ok(0.0);
    }
    ln_gamma_square_lt(law.kappa, c * law.zeta * law.zeta)
}

/// Optimal-phase transform under the coherent model.
pub fn lt_signal_coherent(s: f64, geo: &CascadeGeometry, n: usize, law: &GammaApproxParams) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::domain("lt_signal_coherent", format!("s = {s} must be >= 0")));
    }
    gg_factor(s * geo.scale(), n as f64 * law.kappa, law.zeta)
}

/// Optimal-phase transform for either model.
pub fn lt_signal_optimal(s: f64, geo: &CascadeGeometry, n: usize, law: &GammaApproxParams, model: SignalModel) -> Result<f64> {
    match model {
        SignalModel::CoherentGg => lt_signal_coherent(s, geo, n, law),
        SignalModel::PairwiseGg => {
            if s == 0.0 {
                return Ok(1.0);
            }
            Ok(((n * n) as f64 * ln_factor(s * geo.scale(), law)?).exp())
        }
    }
}

/// ln of the optimal-phase transform; keeps 1 - L accurate for small s.
pub fn ln_lt_signal_optimal(s: f64, geo: &CascadeGeometry, n: usize, law: &GammaApproxParams, model: SignalModel) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::domain("ln_lt_signal_optimal", format!("s = {s} must be >= 0")));
    }
    let c = s * geo.scale();
    if c == 0.0 {
        return Ok(0.0);
    }
    match model {
        SignalModel::CoherentGg => ln_gamma_square_lt(n as f64 * law.kappa, c * law.zeta * law.zeta),
        SignalModel::PairwiseGg => Ok((n * n) as f64 * ln_factor(c, law)?),
    }
}

/// Optimal-phase transform at a complex argument (Re s >= 0), as needed by
/// characteristic-function inversion.
pub fn lt_signal_optimal_complex(
    s: Complex64,
    geo: &CascadeGeometry,
    n: usize,
    law: &GammaApproxParams,
    model: SignalModel,
) -> Result<Complex64> {
    let c = s * geo.scale();
    match model {
        SignalModel::CoherentGg => gamma_square_lt_complex(n as f64 * law.kappa, law.zeta, c),
        SignalModel::PairwiseGg => {
            let f = gamma_square_lt_complex(law.kappa, law.zeta, c)?;
            Ok(f.powf((n * n) as f64))
        }
    }
}

/// Random-phase transform: pairwise product averaged over `draws`
/// independent uniform residual-phase vectors.
pub fn lt_signal_random<R: Rng + ?Sized>(
    s_grid: &[f64],
    geo: &CascadeGeometry,
    n: usize,
    law: &GammaApproxParams,
    draws: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let mut acc = vec![0.0; s_grid.len()];
    for _ in 0..draws.max(1) {
        let beta: Vec<f64> = (0..n).map(|_| 2.0 * PI * rng.random::<f64>()).collect();
        let w = aq_weights(&beta);
        for (k, s) in s_grid.iter().enumerate() {
            acc[k] += lt_signal(*s, geo, &w, law)?;
        }
    }
    let d = draws.max(1) as f64;
    Ok(acc.into_iter().map(|v| v / d).collect())
}

/// Mean and variance of S_R0 with aligned phases, composed from N^2
/// generalized-gamma terms: mu_w = N^2 mu_GG, sigma_w^2 = N^2 sigma_GG^2.
pub fn mean_var_signal_optimal(geo: &CascadeGeometry, n: usize, law: &GammaApproxParams) -> (f64, f64) {
    let g = crate::channel::gg_moments(&crate::channel::gg_from_gamma(law));
    let c = geo.scale();
    let n2 = (n * n) as f64;
    (c * n2 * g.mean, c * c * n2 * g.variance)
}

/// Exact mean and variance of S_R0 under the coherent model.
pub fn mean_var_signal_coherent(geo: &CascadeGeometry, n: usize, law: &GammaApproxParams) -> (f64, f64) {
    let v = n as f64 * law.kappa;
    let z2 = law.zeta * law.zeta;
    let m2 = z2 * v * (v + 1.0);
    let m4 = z2 * z2 * v * (v + 1.0) * (v + 2.0) * (v + 3.0);
    let c = geo.scale();
    (c * m2, c * c * (m4 - m2 * m2))
}
