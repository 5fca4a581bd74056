//! The four pipelines: analytic, simulate, validate, sweep.

use crate::axis::{apply, Axis};
use crate::output::Table;
use crate::CliError;
use irs_sg::interference::LinkMode;
use irs_sg::metrics::{
    mixture, overall_metrics, rate_unit_factor, user_fraction, Analytic, Conditioning, MetricReport, UserMix,
};
use irs_sg::montecarlo::{coverage_from_batch, empirical_rate, simulate_batch, validation_report, Tolerances};
use irs_sg::scenario::linear_to_db;
use irs_sg::Scenario;
use std::path::Path;

/// Metadata common to every output.
pub fn stamp(t: &mut Table, sc: &Scenario, command: &str) {
    let mut meta = vec![
        ("tool".to_string(), format!("irs-sg {}", env!("CARGO_PKG_VERSION"))),
        ("scenario_hash".to_string(), sc.hash_hex()),
        ("seed".to_string(), sc.config.seed.to_string()),
        ("command".to_string(), command.to_string()),
    ];
    meta.append(&mut t.meta);
    t.meta = meta;
}

pub fn mix_for(sc: &Scenario, cond: &Conditioning) -> irs_sg::Result<UserMix> {
    let d0 = match cond {
        Conditioning::At(d) => Some(d.d0),
        Conditioning::Marginal => None,
    };
    user_fraction(sc.config.mix_source, sc, None, d0)
}

/// Overall metrics at the scenario threshold.
pub fn metrics(sc: &Scenario) -> irs_sg::Result<MetricReport> {
    let an = Analytic::new(sc)?;
    let cond = Conditioning::from_scenario(sc);
    let mix = mix_for(sc, &cond)?;
    overall_metrics(&an, &mix, &cond)
}

fn metric_meta(t: &mut Table, m: &MetricReport) {
    let unit = if m.rate_in_bits { "bit/s/Hz" } else { "nat/s/Hz" };
    t.meta("rate_unit", unit);
    t.meta("A", m.a);
    for (k, v) in [
        ("c_id", m.c_id),
        ("c_d", m.c_d),
        ("c", m.c),
        ("r_id", m.r_id),
        ("r_d", m.r_d),
        ("r", m.r),
        ("p_id_w", m.p_id),
        ("p_d_w", m.p_d),
        ("ee_id", m.ee_id),
        ("ee_d", m.ee_d),
        ("ee", m.ee),
    ] {
        t.meta(k, v);
    }
}

/// Coverage over the threshold grid; the scenario-threshold metrics go to
/// the metadata block.
pub fn analytic(sc: &Scenario) -> Result<Table, CliError> {
    let an = Analytic::new(sc)?;
    let cond = Conditioning::from_scenario(sc);
    let mix = mix_for(sc, &cond)?;
    let m = overall_metrics(&an, &mix, &cond)?;
    let mut t = Table::new(&["tau_db", "c_id", "c_d", "c"]);
    metric_meta(&mut t, &m);
    for tau in &sc.tau_grid {
        let c_id = if sc.deployment.m >= 1 { an.coverage_indirect(*tau, &cond)? } else { 0.0 };
        let c_d = an.coverage_direct(*tau, &cond, Some(&mix))?;
        t.push(vec![linear_to_db(*tau), c_id, c_d, mixture(mix.a, c_d, c_id)]);
    }
    stamp(&mut t, sc, "analytic");
    Ok(t)
}

/// Monte-Carlo coverage with Wilson intervals; empirical rates in the
/// metadata. The raw batch is saved when `batch_out` is given.
pub fn simulate(sc: &Scenario, batch_out: Option<&Path>) -> Result<Table, CliError> {
    let batch = simulate_batch(sc, sc.config.n_trials, sc.config.seed)?;
    if let Some(p) = batch_out {
        batch.save(p)?;
    }
    let id = coverage_from_batch(&batch, &sc.tau_grid, LinkMode::Indirect, sc.noise);
    let d = coverage_from_batch(&batch, &sc.tau_grid, LinkMode::Direct, sc.noise);
    let mut t = Table::new(&[
        "tau_db",
        "c_id",
        "c_id_stderr",
        "c_id_lo",
        "c_id_hi",
        "c_d",
        "c_d_stderr",
        "c_d_lo",
        "c_d_hi",
    ]);
    t.meta("n_trials", batch.n_trials());
    let unit = rate_unit_factor(sc);
    for (k, mode) in [("r_id", LinkMode::Indirect), ("r_d", LinkMode::Direct)] {
        let r = empirical_rate(&batch, mode, sc.noise);
        t.meta(k, r.value * unit);
        t.meta(&format!("{k}_stderr"), r.stderr * unit);
    }
    for ((tau, a), b) in sc.tau_grid.iter().zip(&id).zip(&d) {
        t.push(vec![linear_to_db(*tau), a.p, a.stderr, a.lo, a.hi, b.p, b.stderr, b.lo, b.hi]);
    }
    stamp(&mut t, sc, "simulate");
    Ok(t)
}

/// Validation report; the caller turns a failed tolerance into exit code 3.
pub fn validate(sc: &Scenario) -> Result<(Table, bool), CliError> {
    let tol = Tolerances::default();
    let report = validation_report(sc, sc.config.n_trials, &tol)?;
    let mut t = Table::new(&["quantity", "points", "max_abs_gap", "mean_gap", "tolerance", "pass"]);
    t.meta("n_trials", report.n_trials);
    t.meta("oracle_phase_mode", format!("{:?}", sc.config.oracle_phase_mode));
    for e in &report.entries {
        t.push_text(vec![
            e.quantity.clone(),
            e.points.to_string(),
            e.max_abs_gap.to_string(),
            e.mean_gap.to_string(),
            e.tolerance.to_string(),
            e.pass.to_string(),
        ]);
    }
    stamp(&mut t, sc, "validate");
    Ok((t, report.pass()))
}

pub const SWEEP_COLUMNS: [&str; 13] =
    ["M", "A", "c_id", "c_d", "c", "r_id", "r_d", "r", "p_id_w", "p_d_w", "ee_id", "ee_d", "ee"];

pub fn sweep_row(m: &MetricReport, n_irs: usize) -> Vec<f64> {
    vec![
        n_irs as f64,
        m.a,
        m.c_id,
        m.c_d,
        m.c,
        m.r_id,
        m.r_d,
        m.r,
        m.p_id,
        m.p_d,
        m.ee_id,
        m.ee_d,
        m.ee,
    ]
}

/// Analytic metrics at every point of `axis`.
pub fn sweep_reports(sc: &Scenario, axis: &Axis) -> Result<Vec<(f64, Scenario, MetricReport)>, CliError> {
    let mut out = Vec::with_capacity(axis.values.len());
    for v in &axis.values {
        let point = Scenario::from_config(apply(&sc.config, axis.key, *v))?;
        let m = metrics(&point)?;
        out.push((*v, point, m));
    }
    Ok(out)
}

pub fn sweep(sc: &Scenario, axis: &Axis) -> Result<Table, CliError> {
    let mut cols = vec![axis.key.name()];
    cols.extend(SWEEP_COLUMNS);
    let mut t = Table::new(&cols);
    t.meta("axis", axis);
    t.meta("rate_unit", if sc.config.rate_in_bits { "bit/s/Hz" } else { "nat/s/Hz" });
    for (v, point, m) in sweep_reports(sc, axis)? {
        let mut row = vec![v];
        row.extend(sweep_row(&m, point.deployment.m));
        t.push(row);
    }
    stamp(&mut t, sc, "sweep");
    Ok(t)
}
