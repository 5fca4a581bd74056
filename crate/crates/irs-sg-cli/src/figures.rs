//! Plot-ready data behind each figure id.
//!
//! fig2, fig5, fig6 and fig7 pair analytic curves with Monte-Carlo ones and
//! always simulate. The parameter sweeps (fig8 to fig13) are analytic; fig8
//! and fig9 add simulated rates when a trial count is given explicitly.

use crate::axis::{apply, AxisKey};
use crate::commands::{metrics, stamp};
use crate::output::Table;
use crate::CliError;
use irs_sg::channel::GammaApproxParams;
use irs_sg::interference::{lt_bs_interference, InterfererModel, LinkMode};
use irs_sg::metrics::{conditioning_distances, rate_unit_factor, Analytic, Conditioning, MetricReport};
use irs_sg::montecarlo::{
    coverage_from_batch, empirical_lt, empirical_rate, matched_scenario, mean_and_stderr, parallel_samples, s_grid_for,
    sample_bs_interference_unit, sample_signal_optimal, sample_signal_random, simulate_batch,
};
use irs_sg::scenario::{linear_to_db, ConditioningMode, OraclePhaseMode, ScenarioConfig};
use irs_sg::signal::lt_signal_random;
use irs_sg::Scenario;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig2,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    Fig10,
    Fig11,
    Fig12,
    Fig13,
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "fig2" => FigureId::Fig2,
            "fig5" => FigureId::Fig5,
            "fig6" => FigureId::Fig6,
            "fig7" => FigureId::Fig7,
            "fig8" => FigureId::Fig8,
            "fig9" => FigureId::Fig9,
            "fig10" => FigureId::Fig10,
            "fig11" => FigureId::Fig11,
            "fig12" => FigureId::Fig12,
            "fig13" => FigureId::Fig13,
            other => return Err(format!("unknown figure id '{other}' (fig2, fig5 to fig13)")),
        })
    }
}

const LT_POINTS: usize = 40;
const RANDOM_PHASE_DRAWS: usize = 200;

/// `trials` overrides the scenario trial count; for fig8 and fig9 it also
/// switches the simulated series on.
pub fn emit_figure_data(id: FigureId, sc: &Scenario, trials: Option<usize>) -> Result<Table, CliError> {
    let n = trials.unwrap_or(sc.config.n_trials);
    let mut t = match id {
        FigureId::Fig2 => fig2(sc, n)?,
        FigureId::Fig5 => fig5(sc, n)?,
        FigureId::Fig6 => fig6(sc, n)?,
        FigureId::Fig7 => fig7(sc, n)?,
        FigureId::Fig8 => rate_vs_n(sc, trials, false)?,
        FigureId::Fig9 => rate_vs_n(sc, trials, true)?,
        FigureId::Fig10 => versus(
            sc,
            AxisKey::N,
            &range(10.0, 10.0, 150.0),
            &[("M300", 300.0), ("M1500", 1500.0)],
            AxisKey::M,
            &PER_MODE,
        )?,
        FigureId::Fig11 => versus(
            sc,
            AxisKey::A,
            &range(0.05, 0.05, 0.95),
            &[("N50", 50.0), ("N100", 100.0)],
            AxisKey::N,
            &["M", "c_id", "c_d", "c", "r_id", "r_d", "r"],
        )?,
        FigureId::Fig12 => {
            let base = Scenario::from_config(apply(&sc.config, AxisKey::N, 100.0))?;
            versus(
                &base,
                AxisKey::M,
                &range(100.0, 100.0, 3000.0),
                &[("lambda1e-4", 1e-4), ("lambda5e-5", 5e-5)],
                AxisKey::LambdaB,
                &PER_MODE,
            )?
        }
        FigureId::Fig13 => versus(
            sc,
            AxisKey::A,
            &range(0.05, 0.05, 0.95),
            &[("N50", 50.0), ("N100", 100.0)],
            AxisKey::N,
            &["M", "p_id_w", "p_d_w", "ee_id", "ee_d", "ee"],
        )?,
    };
    t.meta("figure", format!("{id:?}").to_lowercase());
    let cmd = format!("figure {}", format!("{id:?}").to_lowercase());
    stamp(&mut t, sc, &cmd);
    Ok(t)
}

const PER_MODE: [&str; 8] = ["c_id", "c_d", "r_id", "r_d", "p_id_w", "p_d_w", "ee_id", "ee_d"];

fn range(a: f64, step: f64, b: f64) -> Vec<f64> {
    let n = ((b - a) / step + 1e-9).floor() as usize + 1;
    (0..n).map(|i| a + step * i as f64).collect()
}

fn pick(m: &MetricReport, n_irs: usize, col: &str) -> f64 {
    match col {
        "M" => n_irs as f64,
        "A" => m.a,
        "c_id" => m.c_id,
        "c_d" => m.c_d,
        "c" => m.c,
        "r_id" => m.r_id,
        "r_d" => m.r_d,
        "r" => m.r,
        "p_id_w" => m.p_id,
        "p_d_w" => m.p_d,
        "ee_id" => m.ee_id,
        "ee_d" => m.ee_d,
        "ee" => m.ee,
        _ => f64::NAN,
    }
}

/// Analytic metrics along `key` for each labelled setting of `series_key`.
fn versus(
    sc: &Scenario,
    key: AxisKey,
    values: &[f64],
    series: &[(&str, f64)],
    series_key: AxisKey,
    cols: &[&str],
) -> Result<Table, CliError> {
    let mut names = vec![key.name().to_string()];
    for (label, _) in series {
        names.extend(cols.iter().map(|c| format!("{c}_{label}")));
    }
    let mut t = Table::with_columns(names);
    for v in values {
        let mut row = vec![*v];
        for (_, s) in series {
            // the series setting goes first so an A axis sees the right disk
            let c = apply(&apply(&sc.config, series_key, *s), key, *v);
            let point = Scenario::from_config(c)?;
            let m = metrics(&point)?;
            row.extend(cols.iter().map(|c| pick(&m, point.deployment.m, c)));
        }
        t.push(row);
    }
    Ok(t)
}

fn fig2(sc: &Scenario, n: usize) -> Result<Table, CliError> {
    let an = Analytic::new(sc)?;
    let d = conditioning_distances(sc);
    let geo = an.cascade(d.r00, d.t0j);
    let ne = sc.n_elements;
    let seed = sc.config.seed;
    let opt: Vec<f64> = parallel_samples(n, seed, "fig2-optimal", |r| sample_signal_optimal(&geo, ne, r))
        .into_iter()
        .collect::<irs_sg::Result<_>>()?;
    let rnd: Vec<f64> = parallel_samples(n, seed, "fig2-random", |r| sample_signal_random(&geo, ne, r))
        .into_iter()
        .collect::<irs_sg::Result<_>>()?;
    let grid = s_grid_for(mean_and_stderr(&opt).value, LT_POINTS);
    let e_opt = empirical_lt(&opt, &grid);
    let e_rnd = empirical_lt(&rnd, &grid);
    let mut rng = irs_sg::rng::stream(seed, 2);
    let a_rnd = lt_signal_random(&grid, &geo, ne, &GammaApproxParams::unit_power(), RANDOM_PHASE_DRAWS, &mut rng)?;
    let mut t = Table::new(&[
        "s",
        "lt_optimal_analytic",
        "lt_optimal_empirical",
        "lt_optimal_stderr",
        "lt_random_analytic",
        "lt_random_empirical",
        "lt_random_stderr",
    ]);
    t.meta("r00_m", d.r00);
    t.meta("t0j_m", d.t0j);
    t.meta("n_trials", n);
    for (k, s) in grid.iter().enumerate() {
        t.push(vec![
            *s,
            an.lt_signal_indirect(*s, d.r00, d.t0j)?,
            e_opt[k].value,
            e_opt[k].stderr,
            a_rnd[k],
            e_rnd[k].value,
            e_rnd[k].stderr,
        ]);
    }
    Ok(t)
}

/// IRS-interference transform for M in {300, 1500} and P in {1, 20} W from
/// the worst-case-aligned oracle, unconditioned.
fn fig5(sc: &Scenario, n: usize) -> Result<Table, CliError> {
    let mut series = Vec::new();
    for m in [300usize, 1500] {
        let base = sc.with_config(|c| {
            c.n_irs = m;
            c.conditioning = ConditioningMode::Marginal;
            c.oracle_phase_mode = OraclePhaseMode::WorstCase;
            c.interferer_model = InterfererModel::WorstCase;
        })?;
        let batch = simulate_batch(&base, n, base.config.seed)?;
        for p in [1.0, 20.0] {
            let x: Vec<f64> = batch.i_r.iter().map(|v| v / base.p_indirect * p).collect();
            let scp = base.with_config(|c| c.power_indirect_w = p)?;
            series.push((format!("M{m}_P{p}"), x, scp));
        }
    }
    let means: Vec<f64> = series.iter().map(|(_, x, _)| mean_and_stderr(x).value).collect();
    let lo = means.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = means.iter().cloned().fold(0.0, f64::max);
    let decades = 4.0 + (hi / lo).log10();
    let grid: Vec<f64> = (0..LT_POINTS)
        .map(|k| 10f64.powf(-2.0 + decades * k as f64 / (LT_POINTS - 1) as f64) / hi)
        .collect();
    let mut names = vec!["s".to_string()];
    let mut cols = Vec::new();
    for (label, x, scp) in &series {
        names.push(format!("lt_analytic_{label}"));
        names.push(format!("lt_empirical_{label}"));
        names.push(format!("lt_stderr_{label}"));
        let an = Analytic::new(scp)?;
        let a = grid.iter().map(|s| an.lt_ir(*s, LinkMode::Indirect)).collect::<irs_sg::Result<Vec<_>>>()?;
        cols.push((a, empirical_lt(x, &grid)));
    }
    let mut t = Table::with_columns(names);
    t.meta("n_trials", n);
    for (k, s) in grid.iter().enumerate() {
        let mut row = vec![*s];
        for (a, e) in &cols {
            row.extend([a[k], e[k].value, e[k].stderr]);
        }
        t.push(row);
    }
    Ok(t)
}

/// BS-interference transform at the median d0 for P_hat in {1, 20} W.
fn fig6(sc: &Scenario, n: usize) -> Result<Table, CliError> {
    let d0 = conditioning_distances(sc).d0;
    let unit = parallel_samples(n, sc.config.seed, "fig6-bs", |r| sample_bs_interference_unit(sc, d0, r));
    let powers = [1.0, 20.0];
    // log grid from 1e-2 / E[I] at the higher power to 1e2 / E[I] at the lower
    let unit_mean = mean_and_stderr(&unit).value * sc.beta2();
    let lo = 1e-2 / (unit_mean * powers[1]);
    let hi = 1e2 / (unit_mean * powers[0]);
    let grid: Vec<f64> = (0..LT_POINTS)
        .map(|k| lo * (hi / lo).powf(k as f64 / (LT_POINTS - 1) as f64))
        .collect();
    let mut t = Table::new(&[
        "s",
        "lt_analytic_P1",
        "lt_empirical_P1",
        "lt_stderr_P1",
        "lt_analytic_P20",
        "lt_empirical_P20",
        "lt_stderr_P20",
    ]);
    t.meta("d0_m", d0);
    t.meta("n_trials", n);
    let mut cols = Vec::new();
    for p in powers {
        let x: Vec<f64> = unit.iter().map(|u| u * p * sc.beta2()).collect();
        let a = grid
            .iter()
            .map(|s| lt_bs_interference(*s, d0, sc.deployment.lambda_b, p, sc.alpha, sc.beta))
            .collect::<irs_sg::Result<Vec<_>>>()?;
        cols.push((a, empirical_lt(&x, &grid)));
    }
    for (k, s) in grid.iter().enumerate() {
        let mut row = vec![*s];
        for (a, e) in &cols {
            row.extend([a[k], e[k].value, e[k].stderr]);
        }
        t.push(row);
    }
    Ok(t)
}

/// Coverage against threshold; the analytic interferer model follows the
/// oracle phase mode.
fn fig7(sc: &Scenario, n: usize) -> Result<Table, CliError> {
    let matched = matched_scenario(sc)?;
    let an = Analytic::new(&matched)?;
    let cond = Conditioning::from_scenario(&matched);
    let batch = simulate_batch(sc, n, sc.config.seed)?;
    let e_id = coverage_from_batch(&batch, &sc.tau_grid, LinkMode::Indirect, sc.noise);
    let e_d = coverage_from_batch(&batch, &sc.tau_grid, LinkMode::Direct, sc.noise);
    let mut t = Table::new(&[
        "tau_dB",
        "C_ID_analytic",
        "C_ID_empirical",
        "C_D_analytic",
        "C_D_empirical",
        "C_ID_stderr",
        "C_D_stderr",
    ]);
    t.meta("n_trials", n);
    t.meta("interferer_model", format!("{:?}", matched.config.interferer_model));
    for (k, tau) in sc.tau_grid.iter().enumerate() {
        let c_id = if sc.deployment.m >= 1 { an.coverage_indirect(*tau, &cond)? } else { 0.0 };
        t.push(vec![
            linear_to_db(*tau),
            c_id,
            e_id[k].p,
            an.coverage_direct(*tau, &cond, None)?,
            e_d[k].p,
            e_id[k].stderr,
            e_d[k].stderr,
        ]);
    }
    Ok(t)
}

/// Rates (fig8) or power and energy efficiency (fig9) against N for
/// P_hat in {1, 5} W.
fn rate_vs_n(sc: &Scenario, trials: Option<usize>, ee: bool) -> Result<Table, CliError> {
    let ns = range(10.0, 10.0, 150.0);
    let powers = [("phat1", 1.0), ("phat5", 5.0)];
    let mut names = vec!["N".to_string()];
    for (label, _) in powers {
        let cols: &[&str] = if ee { &["p_id_w", "p_d_w", "ee_id", "ee_d"] } else { &["r_id", "r_d"] };
        names.extend(cols.iter().map(|c| format!("{c}_{label}")));
        if trials.is_some() {
            let q = if ee { "ee" } else { "r" };
            for mode in ["id", "d"] {
                names.push(format!("{q}_{mode}_empirical_{label}"));
                names.push(format!("{q}_{mode}_stderr_{label}"));
            }
        }
    }
    let mut t = Table::with_columns(names);
    if let Some(n) = trials {
        t.meta("n_trials", n);
    }
    for nv in &ns {
        let mut row = vec![*nv];
        for (_, p) in powers {
            let c: ScenarioConfig = apply(&apply(&sc.config, AxisKey::PHat, p), AxisKey::N, *nv);
            let point = Scenario::from_config(c)?;
            let m = metrics(&point)?;
            if ee {
                row.extend([m.p_id, m.p_d, m.ee_id, m.ee_d]);
            } else {
                row.extend([m.r_id, m.r_d]);
            }
            if let Some(n) = trials {
                let batch = simulate_batch(&point, n, point.config.seed)?;
                let unit = rate_unit_factor(&point);
                for (mode, power) in [(LinkMode::Indirect, m.p_id), (LinkMode::Direct, m.p_d)] {
                    let r = empirical_rate(&batch, mode, point.noise);
                    let div = if ee { power } else { 1.0 };
                    row.extend([r.value * unit / div, r.stderr * unit / div]);
                }
            }
        }
        t.push(row);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse() {
        assert_eq!("fig7".parse::<FigureId>().unwrap(), FigureId::Fig7);
        assert!("fig3".parse::<FigureId>().is_err());
        assert!("fig14".parse::<FigureId>().is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(range(10.0, 10.0, 150.0).len(), 15);
        assert_eq!(range(0.05, 0.05, 0.95).len(), 19);
    }
}
