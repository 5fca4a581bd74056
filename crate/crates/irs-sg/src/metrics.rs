//! Coverage, ergodic rate, power consumption and energy efficiency for
//! IRS-assisted and directly served users, and their network mixture.

use crate::channel::{GammaApproxParams, UNIT_POWER_SIGMA};
use crate::error::{Error, Result};
use crate::geometry::{nearest_bs_quantile, nearest_irs_quantile, nearest_ppp_quantile};
use crate::interference::{
    lt_bs_interference, lt_bs_interference_complex, IrsInterference, IrsInterferenceSpec, LinkMode,
};
use crate::scenario::{ConditioningMode, MixSource, Scenario};
use crate::signal::{
    ln_lt_signal_optimal, lt_signal_optimal_complex, mean_var_signal_coherent, mean_var_signal_optimal, CascadeGeometry,
    SignalModel,
};
use crate::specfun::{gauss_legendre, gil_pelaez_ccdf, integrate_semiinf, QuadratureSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cell::RefCell;

/// Link distances of the typical user: to its nearest IRS (r00), from that
/// IRS to its BS (t0j) and to its nearest BS (d0). 3-D, in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkDistances {
    pub r00: f64,
    pub t0j: f64,
    pub d0: f64,
}

/// Median of each distance law. r00 is NaN without IRSs.
pub fn median_distances(sc: &Scenario) -> LinkDistances {
    let d = &sc.deployment;
    LinkDistances {
        r00: if d.m >= 1 { nearest_irs_quantile(0.5, d) } else { f64::NAN },
        t0j: nearest_ppp_quantile(0.5, d.lambda_b, d.dh()),
        d0: nearest_bs_quantile(0.5, d),
    }
}

/// Conditioning distances: values from the config where given, medians
/// otherwise.
pub fn conditioning_distances(sc: &Scenario) -> LinkDistances {
    let m = median_distances(sc);
    LinkDistances {
        r00: sc.config.r00_m.unwrap_or(m.r00),
        t0j: sc.config.t0j_m.unwrap_or(m.t0j),
        d0: sc.config.d0_m.unwrap_or(m.d0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Conditioning {
    At(LinkDistances),
    Marginal,
}

impl Conditioning {
    pub fn from_scenario(sc: &Scenario) -> Self {
        match sc.config.conditioning {
            ConditioningMode::Conditional => Conditioning::At(conditioning_distances(sc)),
            ConditioningMode::Marginal => Conditioning::Marginal,
        }
    }
}

/// Probability-scale Gauss-Legendre nodes mapped through a quantile function.
fn quantile_nodes(n: usize, q: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    x.iter().zip(&w).map(|(xi, wi)| (q(0.5 * (1.0 + xi)), 0.5 * wi)).collect()
}

/// Analytic model of one scenario with the IRS-interference evaluators
/// built once.
#[derive(Debug, Clone)]
pub struct Analytic<'a> {
    pub sc: &'a Scenario,
    pub law: GammaApproxParams,
    ir_indirect: IrsInterference,
    ir_direct: IrsInterference,
    d0_nodes: Vec<(f64, f64)>,
    rt_nodes: Vec<(f64, f64, f64)>,
}

impl<'a> Analytic<'a> {
    pub fn new(sc: &'a Scenario) -> Result<Self> {
        let c = &sc.config;
        let base = IrsInterferenceSpec {
            deployment: sc.deployment,
            mode: LinkMode::Indirect,
            p_tx: sc.p_indirect,
            alpha: sc.alpha,
            beta_gain: sc.beta,
            n_elements: sc.n_elements,
            rayleigh_sigma: UNIT_POWER_SIGMA,
            convention: c.z_convention,
            z_law: c.z_law,
            interferer: c.interferer_model,
            r_form: c.r_moment_form,
            exclusion_radius: c.irs_exclusion_radius_m,
            taylor_order: c.taylor_order,
            rel_tol: c.taylor_rel_tol,
        };
        let ir_indirect = IrsInterference::new(base)?;
        let ir_direct = IrsInterference::new(IrsInterferenceSpec {
            mode: LinkMode::Direct,
            p_tx: sc.p_direct,
            ..base
        })?;
        let d = sc.deployment;
        let d0_nodes = quantile_nodes(c.marginal_nodes, |p| nearest_bs_quantile(p, &d));
        let rt_nodes = if d.m >= 1 {
            let r = quantile_nodes(c.marginal_nodes_2d, |p| nearest_irs_quantile(p, &d));
            let t = quantile_nodes(c.marginal_nodes_2d, |p| nearest_ppp_quantile(p, d.lambda_b, d.dh()));
            r.iter().flat_map(|(rv, rw)| t.iter().map(move |(tv, tw)| (*rv, *tv, rw * tw))).collect()
        } else {
            Vec::new()
        };
        Ok(Analytic {
            sc,
            law: GammaApproxParams::unit_power(),
            ir_indirect,
            ir_direct,
            d0_nodes,
            rt_nodes,
        })
    }

    pub fn irs_interference(&self, mode: LinkMode) -> &IrsInterference {
        match mode {
            LinkMode::Indirect => &self.ir_indirect,
            LinkMode::Direct => &self.ir_direct,
        }
    }

    fn quad(&self) -> QuadratureSpec {
        self.sc.quad()
    }

    fn model(&self) -> SignalModel {
        self.sc.config.signal_model
    }

    pub fn cascade(&self, r00: f64, t0j: f64) -> CascadeGeometry {
        CascadeGeometry {
            r00,
            t0j,
            alpha: self.sc.alpha,
            p_tx: self.sc.p_indirect,
            beta_gain: self.sc.beta,
        }
    }

    fn need_irs(&self) -> Result<()> {
        if self.sc.deployment.m == 0 {
            return Err(Error::domain("metrics", "IRS-assisted mode needs at least one IRS"));
        }
        Ok(())
    }

    /// E[S_R0] at the given distances.
    pub fn mean_signal_indirect(&self, r00: f64, t0j: f64) -> f64 {
        let geo = self.cascade(r00, t0j);
        match self.model() {
            SignalModel::CoherentGg => mean_var_signal_coherent(&geo, self.sc.n_elements, &self.law).0,
            SignalModel::PairwiseGg => mean_var_signal_optimal(&geo, self.sc.n_elements, &self.law).0,
        }
    }

    pub fn lt_signal_indirect(&self, s: f64, r00: f64, t0j: f64) -> Result<f64> {
        Ok(self.ln_lt_signal_indirect(s, r00, t0j)?.exp())
    }

    pub fn ln_lt_signal_indirect(&self, s: f64, r00: f64, t0j: f64) -> Result<f64> {
        ln_lt_signal_optimal(s, &self.cascade(r00, t0j), self.sc.n_elements, &self.law, self.model())
    }

    fn lt_signal_indirect_complex(&self, s: Complex64, r00: f64, t0j: f64) -> Result<Complex64> {
        lt_signal_optimal_complex(s, &self.cascade(r00, t0j), self.sc.n_elements, &self.law, self.model())
    }

    /// Rayleigh direct link: 1/(1 + s P_hat beta^2 d0^-alpha).
    pub fn lt_signal_direct(&self, s: f64, d0: f64) -> f64 {
        1.0 / (1.0 + s * self.direct_scale(d0))
    }

    fn direct_scale(&self, d0: f64) -> f64 {
        self.sc.p_direct * self.sc.beta2() * d0.powf(-self.sc.alpha)
    }

    fn ib_power(&self, mode: LinkMode) -> f64 {
        match mode {
            LinkMode::Indirect => self.sc.ib_power_indirect(),
            LinkMode::Direct => self.sc.p_direct,
        }
    }

    /// BS interference transform with the nearest BS at d0 excluded.
    pub fn lt_ib(&self, s: f64, d0: f64, mode: LinkMode) -> Result<f64> {
        lt_bs_interference(s, d0, self.sc.deployment.lambda_b, self.ib_power(mode), self.sc.alpha, self.sc.beta)
    }

    fn lt_ib_complex(&self, s: Complex64, d0: f64, mode: LinkMode) -> Result<Complex64> {
        lt_bs_interference_complex(s, d0, self.sc.deployment.lambda_b, self.ib_power(mode), self.sc.alpha, self.sc.beta)
    }

    pub fn lt_ir(&self, s: f64, mode: LinkMode) -> Result<f64> {
        self.irs_interference(mode).lt(s)
    }

    /// E[exp(-j w (S_R0 - tau (I_B + I_R)))] with S conditioned on (r00, t0j)
    /// or averaged, and I_B on d0 or averaged.
    pub fn char_fn_indirect(&self, w: f64, tau: f64, cond: &Conditioning) -> Result<Complex64> {
        let js = Complex64::new(0.0, w);
        let ji = Complex64::new(0.0, -w * tau);
        let ir = self.ir_indirect.lt_complex(ji)?;
        let (ls, lb) = match cond {
            Conditioning::At(d) => (
                self.lt_signal_indirect_complex(js, d.r00, d.t0j)?,
                self.lt_ib_complex(ji, d.d0, LinkMode::Indirect)?,
            ),
            Conditioning::Marginal => {
                let mut ls = Complex64::new(0.0, 0.0);
                for (r, t, wt) in &self.rt_nodes {
                    ls += self.lt_signal_indirect_complex(js, *r, *t)? * *wt;
                }
                let mut lb = Complex64::new(0.0, 0.0);
                for (d0, wt) in &self.d0_nodes {
                    lb += self.lt_ib_complex(ji, *d0, LinkMode::Indirect)? * *wt;
                }
                (ls, lb)
            }
        };
        Ok(ls * lb * ir)
    }

    /// Largest scale of S_R0 - tau (I_B + I_R); its inverse is the lowest
    /// frequency at which the characteristic function changes.
    fn inversion_scale(&self, tau: f64, cond: &Conditioning) -> f64 {
        let d = match cond {
            Conditioning::At(d) => *d,
            Conditioning::Marginal => median_distances(self.sc),
        };
        let a = self.sc.alpha;
        // Campbell mean of I_B beyond d0 on the plane
        let ib = 2.0 * std::f64::consts::PI * self.sc.deployment.lambda_b * self.ib_power(LinkMode::Indirect)
            * self.sc.beta2()
            * d.d0.powf(2.0 - a)
            / (a - 2.0).max(0.1);
        let ir = self.ir_indirect.mean_interference();
        self.mean_signal_indirect(d.r00, d.t0j).max(tau * (ib + ir))
    }

    /// Pr(SINR_ID >= tau) by characteristic-function inversion.
    pub fn coverage_indirect(&self, tau: f64, cond: &Conditioning) -> Result<f64> {
        if !(tau > 0.0) {
            return Err(Error::domain("coverage_indirect", format!("tau = {tau} must be positive")));
        }
        self.need_irs()?;
        let scale = self.inversion_scale(tau, cond);
        let quad = self.quad().with_cutoff(self.quad().upper_cutoff / scale);
        let failure = RefCell::new(None);
        let p = gil_pelaez_ccdf(
            |w| match self.char_fn_indirect(w, tau, cond) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            },
            tau * self.sc.noise,
            &quad,
        )?;
        match failure.into_inner() {
            Some(e) => Err(e),
            None => Ok(p),
        }
    }

    /// Pr(SINR_D >= tau) given d0:
    /// exp(-tau d0^a N0/(beta^2 P_hat)) L_IB(s) L_IR(s), s = tau d0^a/(beta^2 P_hat).
    pub fn coverage_direct_at(&self, tau: f64, d0: f64) -> Result<f64> {
        if !(tau > 0.0) {
            return Err(Error::domain("coverage_direct", format!("tau = {tau} must be positive")));
        }
        let s = tau / self.direct_scale(d0);
        Ok((-s * self.sc.noise).exp() * self.lt_ib(s, d0, LinkMode::Direct)? * self.lt_ir(s, LinkMode::Direct)?)
    }

    /// Direct coverage; with `mix` and the blockage-scaled SINR flag the
    /// threshold becomes tau / A.
    pub fn coverage_direct(&self, tau: f64, cond: &Conditioning, mix: Option<&UserMix>) -> Result<f64> {
        let tau = match mix {
            Some(m) if self.sc.config.blockage_scaled_sinr => {
                if m.a <= 0.0 {
                    return Ok(0.0);
                }
                tau / m.a
            }
            _ => tau,
        };
        match cond {
            Conditioning::At(d) => self.coverage_direct_at(tau, d.d0),
            Conditioning::Marginal => {
                let mut acc = 0.0;
                for (d0, w) in &self.d0_nodes {
                    acc += w * self.coverage_direct_at(tau, *d0)?;
                }
                Ok(acc)
            }
        }
    }

    fn hamdi(&self, scale: f64, mut body: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
        let quad = self.quad().with_tol(self.quad().rel_tol, 1e-300).with_cutoff(1.0 / scale);
        let noise = self.sc.noise;
        let mut failure = None;
        let v = integrate_semiinf(
            |s| match body(s) {
                Ok(b) => b * (-noise * s).exp() / s,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            &quad,
        )?;
        match failure {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }

    /// E[ln(1 + SINR_ID)] in nats (Hamdi's lemma).
    pub fn rate_indirect(&self, cond: &Conditioning) -> Result<f64> {
        self.need_irs()?;
        let scale = self.inversion_scale(0.0, cond);
        self.hamdi(scale, |s| {
            let li = self.lt_ir(s, LinkMode::Indirect)?;
            let (one_minus_ls, lb) = match cond {
                Conditioning::At(d) => (
                    -self.ln_lt_signal_indirect(s, d.r00, d.t0j)?.exp_m1(),
                    self.lt_ib(s, d.d0, LinkMode::Indirect)?,
                ),
                Conditioning::Marginal => {
                    let mut a = 0.0;
                    for (r, t, w) in &self.rt_nodes {
                        a += w * -self.ln_lt_signal_indirect(s, *r, *t)?.exp_m1();
                    }
                    let mut b = 0.0;
                    for (d0, w) in &self.d0_nodes {
                        b += w * self.lt_ib(s, *d0, LinkMode::Indirect)?;
                    }
                    (a, b)
                }
            };
            Ok(li * lb * one_minus_ls)
        })
    }

    /// E[ln(1 + SINR_D)] in nats. In marginal mode the signal and BS
    /// interference share d0 and are averaged jointly.
    pub fn rate_direct(&self, cond: &Conditioning) -> Result<f64> {
        let scale = match cond {
            Conditioning::At(d) => self.direct_scale(d.d0),
            Conditioning::Marginal => self.direct_scale(median_distances(self.sc).d0),
        };
        self.hamdi(scale, |s| {
            let li = self.lt_ir(s, LinkMode::Direct)?;
            let joint = match cond {
                Conditioning::At(d) => self.direct_term(s, d.d0)?,
                Conditioning::Marginal => {
                    let mut a = 0.0;
                    for (d0, w) in &self.d0_nodes {
                        a += w * self.direct_term(s, *d0)?;
                    }
                    a
                }
            };
            Ok(li * joint)
        })
    }

    // L_IB(s) (1 - L_SD(s)) at d0
    fn direct_term(&self, s: f64, d0: f64) -> Result<f64> {
        let x = s * self.direct_scale(d0);
        Ok(self.lt_ib(s, d0, LinkMode::Direct)? * x / (1.0 + x))
    }

    pub fn rate(&self, mode: LinkMode, cond: &Conditioning) -> Result<f64> {
        match mode {
            LinkMode::Indirect => self.rate_indirect(cond),
            LinkMode::Direct => self.rate_direct(cond),
        }
    }

    pub fn coverage(&self, mode: LinkMode, tau: f64, cond: &Conditioning) -> Result<f64> {
        match mode {
            LinkMode::Indirect => self.coverage_indirect(tau, cond),
            LinkMode::Direct => self.coverage_direct(tau, cond, None),
        }
    }

    /// E[ln(1 + SINR)] = int_0^inf Pr(SINR > t)/(1 + t) dt, through the
    /// coverage functions; an independent route to the same rate.
    pub fn rate_ccdf_route(&self, mode: LinkMode, cond: &Conditioning) -> Result<f64> {
        let quad = self.quad().with_tol(1e-6, 1e-300).with_cutoff(1.0);
        let mut failure = None;
        let v = integrate_semiinf(
            |t| {
                if t <= 0.0 || !t.is_finite() {
                    return 1.0;
                }
                match self.coverage(mode, t, cond) {
                    Ok(p) => p / (1.0 + t),
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            },
            &quad,
        )?;
        match failure {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }

    pub fn power_model(&self) -> PowerModel {
        PowerModel::from_scenario(self.sc)
    }

    /// Rate over mode power, in the scenario's rate unit per W.
    pub fn energy_efficiency(&self, mode: LinkMode, cond: &Conditioning) -> Result<f64> {
        let r = self.rate(mode, cond)? * rate_unit_factor(self.sc);
        energy_efficiency(r, power_consumption(&self.power_model(), mode))
    }
}

/// 1/ln 2 when rates are reported in bits.
pub fn rate_unit_factor(sc: &Scenario) -> f64 {
    if sc.config.rate_in_bits {
        std::f64::consts::LOG2_E
    } else {
        1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerModel {
    pub p_bs: f64,
    pub p_u: f64,
    /// P.
    pub p: f64,
    /// P_hat.
    pub p_hat: f64,
    /// Per-element phase-resolution power P_r(b).
    pub p_r: f64,
    pub n: usize,
}

impl PowerModel {
    pub fn from_scenario(sc: &Scenario) -> Self {
        PowerModel {
            p_bs: sc.p_bs_static,
            p_u: sc.p_user_static,
            p: sc.p_indirect,
            p_hat: sc.p_direct,
            p_r: sc.p_phase_per_element,
            n: sc.n_elements,
        }
    }

    pub fn p_irs(&self) -> f64 {
        self.n as f64 * self.p_r
    }

    pub fn p_id(&self) -> f64 {
        self.p_bs + self.p_u + self.p + self.p_irs()
    }

    pub fn p_d(&self) -> f64 {
        self.p_bs + self.p_u + self.p_hat
    }
}

pub fn power_consumption(model: &PowerModel, mode: LinkMode) -> f64 {
    match mode {
        LinkMode::Indirect => model.p_id(),
        LinkMode::Direct => model.p_d(),
    }
}

pub fn energy_efficiency(rate: f64, power: f64) -> Result<f64> {
    if !(power > 0.0) {
        return Err(Error::domain("energy_efficiency", format!("power = {power} must be positive")));
    }
    Ok(rate / power)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UserMix {
    /// Fraction of IRS-assisted users.
    pub a: f64,
    pub source: MixSource,
}

impl UserMix {
    pub fn fixed(a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::domain("UserMix", format!("A = {a} outside [0, 1]")));
        }
        Ok(UserMix { a, source: MixSource::Fixed })
    }
}

/// Fraction of IRS-assisted users. Blockage parameters and d0 fall back to
/// the scenario config.
pub fn user_fraction(source: MixSource, sc: &Scenario, blockage: Option<(f64, f64)>, d0: Option<f64>) -> Result<UserMix> {
    let a = match source {
        MixSource::IntensityRatio => {
            let lr = sc.deployment.lambda_r();
            lr / (lr + sc.deployment.lambda_b)
        }
        MixSource::Blockage => {
            let (eta, u) = match blockage {
                Some(b) => b,
                None => (
                    sc.config.blockage_eta_per_m.ok_or(Error::MissingParameter("blockage_eta_per_m"))?,
                    sc.config.blockage_u.ok_or(Error::MissingParameter("blockage_u"))?,
                ),
            };
            if !(eta >= 0.0 && u >= 0.0) {
                return Err(Error::domain("user_fraction", "blockage eta and u must be >= 0"));
            }
            let d0 = d0.or(sc.config.d0_m).ok_or(Error::MissingParameter("d0"))?;
            -(-(eta * d0 + u)).exp_m1()
        }
        MixSource::Fixed => sc.config.mix_fraction.ok_or(Error::MissingParameter("mix_fraction"))?,
    };
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::domain("user_fraction", format!("A = {a} outside [0, 1]")));
    }
    Ok(UserMix { a, source })
}

/// Value with a standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub a: f64,
    pub tau: f64,
    pub c_id: f64,
    pub c_d: f64,
    pub c: f64,
    pub r_id: f64,
    pub r_d: f64,
    pub r: f64,
    pub p_id: f64,
    pub p_d: f64,
    pub ee_id: f64,
    pub ee_d: f64,
    pub ee: f64,
    pub rate_in_bits: bool,
    pub conditioning: Conditioning,
    pub c_id_empirical: Option<Estimate>,
    pub c_d_empirical: Option<Estimate>,
}

/// (1 - A) direct + A indirect.
pub fn mixture(a: f64, direct: f64, indirect: f64) -> f64 {
    (1.0 - a) * direct + a * indirect
}

/// Both modes and their A-weighted mixture at the scenario threshold.
pub fn overall_metrics(an: &Analytic<'_>, mix: &UserMix, cond: &Conditioning) -> Result<MetricReport> {
    let sc = an.sc;
    let tau = sc.tau;
    let unit = rate_unit_factor(sc);
    let pm = an.power_model();
    let (c_id, r_id) = if sc.deployment.m >= 1 {
        (an.coverage_indirect(tau, cond)?, an.rate_indirect(cond)? * unit)
    } else {
        (0.0, 0.0)
    };
    let c_d = an.coverage_direct(tau, cond, Some(mix))?;
    let r_d = an.rate_direct(cond)? * unit;
    let (p_id, p_d) = (pm.p_id(), pm.p_d());
    let ee_id = energy_efficiency(r_id, p_id)?;
    let ee_d = energy_efficiency(r_d, p_d)?;
    Ok(MetricReport {
        a: mix.a,
        tau,
        c_id,
        c_d,
        c: mixture(mix.a, c_d, c_id),
        r_id,
        r_d,
        r: mixture(mix.a, r_d, r_id),
        p_id,
        p_d,
        ee_id,
        ee_d,
        ee: mixture(mix.a, ee_d, ee_id),
        rate_in_bits: sc.config.rate_in_bits,
        conditioning: *cond,
        c_id_empirical: None,
        c_d_empirical: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_examples() {
        let sc = Scenario::default();
        let pm = PowerModel::from_scenario(&sc);
        assert!((pm.p_irs() - 3.9).abs() < 1e-12);
        assert!((pm.p_id() - 33.91).abs() < 1e-9);
        let other = PowerModel { n: 200, ..pm };
        assert_eq!(power_consumption(&pm, LinkMode::Direct), power_consumption(&other, LinkMode::Direct));
    }

    #[test]
    fn mix_examples() {
        let sc = Scenario::default();
        let lb = sc.deployment.lambda_b;
        let m_equal = (lb * std::f64::consts::PI * 700.0 * 700.0).round() as usize;
        let eq = sc.with_config(|c| c.n_irs = m_equal).unwrap();
        let a = user_fraction(MixSource::IntensityRatio, &eq, None, None).unwrap().a;
        assert!((a - 0.5).abs() < 2e-3, "{a}");
        let b = user_fraction(MixSource::Blockage, &sc, Some((0.0, 0.0)), Some(30.0)).unwrap();
        assert_eq!(b.a, 0.0);
        assert!(matches!(user_fraction(MixSource::Blockage, &sc, None, Some(30.0)), Err(Error::MissingParameter(_))));
    }

    #[test]
    fn mixture_endpoints_exact() {
        assert_eq!(mixture(0.0, 0.3, 0.7), 0.3);
        assert_eq!(mixture(1.0, 0.3, 0.7), 0.7);
    }
}
