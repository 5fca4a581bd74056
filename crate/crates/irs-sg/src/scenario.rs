//! Scenario configuration: the text format (flat `key = value` pairs with
//! units in the key names), validation and conversion to linear units.

use crate::error::{Error, Result};
use crate::geometry::{DeploymentParams, RMomentForm};
use crate::interference::{InterfererModel, ZConvention, ZLaw};
use crate::signal::SignalModel;
use crate::specfun::QuadratureSpec;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

/// Transmit power of BSs that interfere with an IRS-assisted user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum IbPower {
    /// Indirect-mode power P.
    Indirect,
    /// Direct-mode power P_hat.
    #[default]
    Direct,
}

/// Where the fraction of IRS-assisted users comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MixSource {
    /// lambda_R / (lambda_R + lambda_B).
    #[default]
    IntensityRatio,
    /// 1 - exp(-(eta d0 + u)).
    Blockage,
    /// `mix_fraction` as given.
    Fixed,
}

/// Phase configuration of non-serving IRSs in the simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OraclePhaseMode {
    /// Each IRS is aligned to its own user at a uniform location.
    #[default]
    OwnUser,
    /// All residual phases toward the typical user are zero.
    WorstCase,
}

/// How the link distances r00 and d0 are treated by the analytic metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ConditioningMode {
    /// Fixed r00 and d0 (median of each law unless given).
    #[default]
    Conditional,
    /// Averaged over the nearest-node distance laws.
    Marginal,
}

/// Scenario as written in a config file. dB and dBm values are converted
/// once, by [`Scenario::from_config`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub height_irs_m: f64,
    pub height_bs_m: f64,
    pub radius_m: f64,
    pub lambda_bs_per_m2: f64,
    pub n_irs: usize,
    pub n_elements: usize,
    pub path_loss_exponent: f64,
    pub power_indirect_w: f64,
    pub power_direct_w: f64,
    pub static_power_bs_dbm: f64,
    pub static_power_user_dbm: f64,
    pub phase_power_per_element_w: f64,
    pub noise_w: f64,
    pub tau_db: f64,
    pub tau_grid_db: Vec<f64>,
    pub ref_gain: f64,
    pub carrier_frequency_hz: Option<f64>,
    pub signal_model: SignalModel,
    pub interferer_model: InterfererModel,
    pub z_convention: ZConvention,
    pub z_law: ZLaw,
    pub r_moment_form: RMomentForm,
    pub ib_power_for_indirect: IbPower,
    pub irs_exclusion_radius_m: f64,
    pub conditioning: ConditioningMode,
    pub r00_m: Option<f64>,
    pub d0_m: Option<f64>,
    pub t0j_m: Option<f64>,
    pub marginal_nodes: usize,
    pub marginal_nodes_2d: usize,
    pub mix_source: MixSource,
    pub mix_fraction: Option<f64>,
    pub blockage_eta_per_m: Option<f64>,
    pub blockage_u: Option<f64>,
    pub blockage_scaled_sinr: bool,
    pub quad_rel_tol: f64,
    pub quad_abs_tol: f64,
    pub quad_max_subdivisions: usize,
    pub quad_upper_cutoff: f64,
    pub taylor_order: usize,
    pub taylor_rel_tol: f64,
    pub n_trials: usize,
    pub seed: u64,
    pub oracle_phase_mode: OraclePhaseMode,
    pub exact_weight_fraction: f64,
    pub rate_in_bits: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            height_irs_m: 10.0,
            height_bs_m: 20.0,
            radius_m: 700.0,
            lambda_bs_per_m2: 1e-4,
            n_irs: 1500,
            n_elements: 50,
            path_loss_exponent: 4.0,
            power_indirect_w: 20.0,
            power_direct_w: 20.0,
            static_power_bs_dbm: 40.0,
            static_power_user_dbm: 10.0,
            phase_power_per_element_w: 0.078,
            noise_w: 1e-10,
            tau_db: -10.0,
            tau_grid_db: (0..=20).map(|i| -20.0 + 2.0 * i as f64).collect(),
            ref_gain: 1.0,
            carrier_frequency_hz: None,
            signal_model: SignalModel::CoherentGg,
            interferer_model: InterfererModel::WorstCase,
            z_convention: ZConvention::Consistent,
            z_law: ZLaw::Gamma,
            r_moment_form: RMomentForm::SteepTail,
            ib_power_for_indirect: IbPower::Direct,
            irs_exclusion_radius_m: 0.0,
            conditioning: ConditioningMode::Conditional,
            r00_m: None,
            d0_m: None,
            t0j_m: None,
            marginal_nodes: 64,
            marginal_nodes_2d: 16,
            mix_source: MixSource::IntensityRatio,
            mix_fraction: None,
            blockage_eta_per_m: None,
            blockage_u: None,
            blockage_scaled_sinr: false,
            quad_rel_tol: 1e-8,
            quad_abs_tol: 1e-10,
            quad_max_subdivisions: 4000,
            quad_upper_cutoff: 1.0,
            taylor_order: 20,
            taylor_rel_tol: 1e-10,
            n_trials: 100_000,
            seed: 1,
            oracle_phase_mode: OraclePhaseMode::OwnUser,
            exact_weight_fraction: 0.999,
            rate_in_bits: true,
        }
    }
}

impl ScenarioConfig {
    /// Parse the text format. Errors carry the offending line.
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str::<ScenarioConfig>(text).map_err(|e| {
            let line = e.span().map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
            Error::Config {
                line,
                message: e.message().to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical text form (all keys, fixed order).
    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("scenario config serializes")
    }
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn dbm_to_w(dbm: f64) -> f64 {
    db_to_linear(dbm - 30.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Validated scenario in linear units.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub deployment: DeploymentParams,
    pub n_elements: usize,
    pub alpha: f64,
    /// P, transmit power toward IRS-assisted users.
    pub p_indirect: f64,
    /// P_hat, transmit power toward directly served users.
    pub p_direct: f64,
    pub p_bs_static: f64,
    pub p_user_static: f64,
    pub p_phase_per_element: f64,
    pub noise: f64,
    pub tau: f64,
    pub tau_grid: Vec<f64>,
    /// beta, amplitude reference gain (beta^2 multiplies every link power).
    pub beta: f64,
    pub config: ScenarioConfig,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario::from_config(ScenarioConfig::default()).expect("defaults are valid")
    }
}

impl Scenario {
    pub fn from_config(c: ScenarioConfig) -> Result<Self> {
        let bad = |message: String| Error::Config { line: None, message };
        if !(c.height_irs_m >= 0.0 && c.height_bs_m > c.height_irs_m) {
            return Err(bad(format!(
                "invariant H_B > H_R >= 0 violated: height_bs_m = {}, height_irs_m = {}",
                c.height_bs_m, c.height_irs_m
            )));
        }
        let positive = [
            ("radius_m", c.radius_m),
            ("lambda_bs_per_m2", c.lambda_bs_per_m2),
            ("power_indirect_w", c.power_indirect_w),
            ("power_direct_w", c.power_direct_w),
            ("noise_w", c.noise_w),
            ("ref_gain", c.ref_gain),
            ("quad_rel_tol", c.quad_rel_tol),
            ("quad_abs_tol", c.quad_abs_tol),
            ("quad_upper_cutoff", c.quad_upper_cutoff),
            ("taylor_rel_tol", c.taylor_rel_tol),
        ];
        for (k, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(bad(format!("{k} must be positive and finite, got {v}")));
            }
        }
        if !(c.phase_power_per_element_w >= 0.0) {
            return Err(bad("phase_power_per_element_w must be >= 0".into()));
        }
        if !(c.path_loss_exponent > 2.0) {
            return Err(bad(format!("path_loss_exponent must exceed 2, got {}", c.path_loss_exponent)));
        }
        if c.n_elements < 1 {
            return Err(bad("n_elements must be at least 1".into()));
        }
        if c.taylor_order < 1 || c.quad_max_subdivisions < 1 || c.marginal_nodes < 2 || c.marginal_nodes_2d < 2 {
            return Err(bad("taylor_order, quad_max_subdivisions >= 1 and marginal_nodes >= 2 required".into()));
        }
        if c.n_trials < 1 {
            return Err(bad("n_trials must be at least 1".into()));
        }
        if !(c.exact_weight_fraction > 0.0 && c.exact_weight_fraction <= 1.0) {
            return Err(bad("exact_weight_fraction must lie in (0, 1]".into()));
        }
        if !(c.irs_exclusion_radius_m >= 0.0 && c.irs_exclusion_radius_m < c.radius_m) {
            return Err(bad("irs_exclusion_radius_m must lie in [0, radius_m)".into()));
        }
        if c.tau_grid_db.is_empty() || c.tau_grid_db.iter().any(|t| !t.is_finite()) || !c.tau_db.is_finite() {
            return Err(bad("tau_db and tau_grid_db must be finite (grid non-empty)".into()));
        }
        if let Some(r) = c.r00_m {
            if !(r >= c.height_irs_m) {
                return Err(bad(format!("r00_m = {r} below height_irs_m")));
            }
        }
        if let Some(t) = c.t0j_m {
            if !(t >= c.height_bs_m - c.height_irs_m) {
                return Err(bad(format!("t0j_m = {t} below the BS-IRS height offset")));
            }
        }
        if let Some(d) = c.d0_m {
            if !(d >= c.height_bs_m) {
                return Err(bad(format!("d0_m = {d} below height_bs_m")));
            }
        }
        match c.mix_source {
            MixSource::Fixed => match c.mix_fraction {
                Some(a) if (0.0..=1.0).contains(&a) => {}
                _ => return Err(bad("mix_source = fixed needs mix_fraction in [0, 1]".into())),
            },
            MixSource::Blockage => match (c.blockage_eta_per_m, c.blockage_u) {
                (Some(e), Some(u)) if e >= 0.0 && u >= 0.0 => {}
                _ => return Err(bad("mix_source = blockage needs blockage_eta_per_m >= 0 and blockage_u >= 0".into())),
            },
            MixSource::IntensityRatio => {}
        }
        let beta = match c.carrier_frequency_hz {
            Some(f) if f > 0.0 => 299_792_458.0 / (4.0 * std::f64::consts::PI * f),
            Some(f) => return Err(bad(format!("carrier_frequency_hz must be positive, got {f}"))),
            None => c.ref_gain,
        };
        let deployment = DeploymentParams {
            lambda_b: c.lambda_bs_per_m2,
            m: c.n_irs,
            radius: c.radius_m,
            h_b: c.height_bs_m,
            h_r: c.height_irs_m,
        };
        deployment.validate()?;
        Ok(Scenario {
            deployment,
            n_elements: c.n_elements,
            alpha: c.path_loss_exponent,
            p_indirect: c.power_indirect_w,
            p_direct: c.power_direct_w,
            p_bs_static: dbm_to_w(c.static_power_bs_dbm),
            p_user_static: dbm_to_w(c.static_power_user_dbm),
            p_phase_per_element: c.phase_power_per_element_w,
            noise: c.noise_w,
            tau: db_to_linear(c.tau_db),
            tau_grid: c.tau_grid_db.iter().map(|t| db_to_linear(*t)).collect(),
            beta,
            config: c,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_config(ScenarioConfig::parse(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_config(ScenarioConfig::load(path)?)
    }

    /// Rebuild after editing the config (sweeps).
    pub fn with_config(&self, edit: impl FnOnce(&mut ScenarioConfig)) -> Result<Self> {
        let mut c = self.config.clone();
        edit(&mut c);
        Self::from_config(c)
    }

    pub fn beta2(&self) -> f64 {
        self.beta * self.beta
    }

    pub fn quad(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.config.quad_rel_tol,
            abs_tol: self.config.quad_abs_tol,
            max_subdivisions: self.config.quad_max_subdivisions,
            upper_cutoff: self.config.quad_upper_cutoff,
        }
    }

    /// Transmit power of BSs interfering with IRS-assisted users.
    pub fn ib_power_indirect(&self) -> f64 {
        match self.config.ib_power_for_indirect {
            IbPower::Indirect => self.p_indirect,
            IbPower::Direct => self.p_direct,
        }
    }

    /// SHA-256 over the canonical config text with seed and trial count
    /// removed, so batches from different seeds share a scenario identity.
    pub fn hash(&self) -> [u8; 32] {
        let mut c = self.config.clone();
        c.seed = 0;
        c.n_trials = 0;
        let digest = Sha256::digest(c.to_text().as_bytes());
        let mut out = [0u8; 32];
        out.copy_from_slice(&digest);
        out
    }

    pub fn hash_hex(&self) -> String {
        self.hash().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_in_linear_units() {
        let s = Scenario::default();
        assert!((s.p_bs_static - 10.0).abs() < 1e-12);
        assert!((s.p_user_static - 0.01).abs() < 1e-15);
        assert!((s.tau - 0.1).abs() < 1e-15);
        assert_eq!(s.deployment.m, 1500);
        assert_eq!(s.n_elements, 50);
        assert_eq!(s.tau_grid.len(), 21);
    }

    #[test]
    fn parse_reports_line_of_bad_value() {
        let text = "n_elements = 32\nheight_bs_m = \"high\"\n";
        match ScenarioConfig::parse(text) {
            Err(Error::Config { line, .. }) => assert_eq!(line, Some(2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(matches!(ScenarioConfig::parse("n_elemnts = 3\n"), Err(Error::Config { .. })));
    }

    #[test]
    fn height_invariant_named() {
        let err = Scenario::parse("height_irs_m = 30\nheight_bs_m = 20\n").unwrap_err();
        assert!(err.to_string().contains("H_B > H_R"), "{err}");
    }

    #[test]
    fn text_round_trip_and_hash() {
        let s = Scenario::default();
        let again = Scenario::parse(&s.config.to_text()).unwrap();
        assert_eq!(s, again);
        let other = s.with_config(|c| c.seed = 99).unwrap();
        assert_eq!(s.hash(), other.hash());
        let changed = s.with_config(|c| c.n_elements = 8).unwrap();
        assert_ne!(s.hash(), changed.hash());
    }
}
