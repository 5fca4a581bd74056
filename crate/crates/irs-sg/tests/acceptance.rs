//! Acceptance suite. Prints one verdict line per criterion with the measured
//! quantity, the tolerance and the runtime against its budget.
//!
//! The process exits 0 when every criterion ran to completion, whatever
//! its verdict, so a red criterion is reported rather than hidden behind a
//! harness failure. Set ACCEPTANCE_STRICT=1 to make any FAIL exit nonzero.
//! ACCEPTANCE_ONLY=3,5 runs a subset.

use irs_sg::channel::GammaApproxParams;
use irs_sg::geometry::midpoint_distance;
use irs_sg::interference::{
    lt_bs_interference, lt_bs_interference_alpha4, lt_bs_interference_general, phase_bearing_ir,
    worst_case_ir_bound, InterfererModel, LinkMode, ReflectedLink,
};
use irs_sg::metrics::{
    conditioning_distances, mixture, overall_metrics, power_consumption, Analytic, Conditioning, UserMix,
};
use irs_sg::montecarlo::{
    coverage_from_batch, empirical_lt, mean_and_stderr, parallel_samples, s_grid_for, sample_bs_interference_unit,
    sample_signal_optimal, sample_signal_random, sample_z, simulate_batch,
};
use irs_sg::scenario::{ConditioningMode, OraclePhaseMode};
use irs_sg::signal::{lt_signal_optimal, lt_signal_random, SignalModel};
use irs_sg::specfun::{gauss_2f1, gauss_legendre_on, gil_pelaez_ccdf, parabolic_cylinder_d, QuadratureSpec};
use irs_sg::Scenario;
use num_complex::Complex64;
use rand::Rng;
use std::time::Instant;

type Outcome = irs_sg::Result<(bool, String)>;

struct Verdict {
    pass: bool,
    line: String,
}

fn run(id: u32, name: &str, budget_s: f64, f: impl FnOnce() -> Outcome) -> Option<Verdict> {
    if let Ok(only) = std::env::var("ACCEPTANCE_ONLY") {
        if !only.split(',').any(|s| s.trim() == id.to_string()) {
            return None;
        }
    }
    let t = Instant::now();
    let res = f();
    let secs = t.elapsed().as_secs_f64();
    let (pass, detail) = match res {
        Ok((ok, d)) => (ok && secs <= budget_s, d),
        Err(e) => (false, format!("error: {e}")),
    };
    let line = format!(
        "criterion {id:>2} {}: {name}; {detail}; runtime {secs:.1} s (budget {budget_s:.0} s)",
        if pass { "PASS" } else { "FAIL" }
    );
    println!("{line}");
    Some(Verdict { pass, line })
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

fn non_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + 1e-12)
}

fn seed() -> u64 {
    std::env::var("ACCEPTANCE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240611)
}

fn criterion_1() -> Outcome {
    let mut err_2f1 = 0.0f64;
    for k in 1..=5000 {
        let x = 50.0 * k as f64 / 5000.0;
        let v = gauss_2f1(1.0, 0.5, 1.5, -x * x)?;
        err_2f1 = err_2f1.max((v - x.atan() / x).abs());
    }
    // small X on a log grid as well
    for k in 0..60 {
        let x = 10f64.powf(-6.0 + 0.1 * k as f64);
        let v = gauss_2f1(1.0, 0.5, 1.5, -x * x)?;
        err_2f1 = err_2f1.max((v - x.atan() / x).abs());
    }
    let mut err_d0 = 0.0f64;
    for k in 1..=400 {
        let z = 0.05 * k as f64;
        let want = (-0.25 * z * z).exp();
        err_d0 = err_d0.max((parabolic_cylinder_d(0.0, z)? - want).abs() / want);
    }
    // D_{v+1}(z) - z D_v(z) + v D_{v-1}(z) = 0
    let mut resid = 0.0f64;
    for v in [-1.0, -1.3, -2.5, -3.7, -6.2, -10.5, -20.25] {
        for z in [0.1, 0.5, 1.0, 2.0, 3.5, 6.0, 10.0] {
            let up = parabolic_cylinder_d(v + 1.0, z)?;
            let mid = parabolic_cylinder_d(v, z)?;
            let down = parabolic_cylinder_d(v - 1.0, z)?;
            let scale = up.abs().max((z * mid).abs()).max((v * down).abs());
            resid = resid.max((up - z * mid + v * down).abs() / scale);
        }
    }
    let ok = err_2f1 < 1e-8 && err_d0 < 1e-10 && resid < 1e-6;
    Ok((
        ok,
        format!("2F1 arctan max err {err_2f1:.2e} (< 1e-8), D_0 max rel err {err_d0:.2e} (< 1e-10), recurrence residual {resid:.2e} (< 1e-6)"),
    ))
}

fn criterion_2() -> Outcome {
    let q = QuadratureSpec::default().with_tol(1e-9, 1e-7);
    let mut worst = 0.0f64;
    for x in [0.05, 0.5, 1.0, 2.0, 5.0] {
        let p = gil_pelaez_ccdf(|w| Complex64::new(1.0, w).inv(), x, &q)?;
        worst = worst.max((p - (-x as f64).exp()).abs());
        let p = gil_pelaez_ccdf(|w| Complex64::new(1.0, w).powi(-2), x, &q)?;
        worst = worst.max((p - (-x as f64).exp() * (1.0 + x)).abs());
    }
    // atoms leave an undamped 1/w tail; a looser floor ends it sooner
    let q = QuadratureSpec::default().with_tol(1e-9, 3e-5);
    // 0.3 at 1, 0.7 at 3
    let atoms = |w: f64| Complex64::from_polar(0.3, -w) + Complex64::from_polar(0.7, -3.0 * w);
    for (x, want) in [(0.5, 1.0), (2.0, 0.7), (4.0, 0.0)] {
        worst = worst.max((gil_pelaez_ccdf(atoms, x, &q)? - want).abs());
    }
    for (c, x, want) in [(2.0, 1.0, 1.0), (2.0, 3.0, 0.0)] {
        worst = worst.max((gil_pelaez_ccdf(|w| Complex64::from_polar(1.0, -c * w), x, &q)? - want).abs());
    }
    Ok((worst < 1e-4, format!("max abs err over Exp(1), Gamma(2,1), point masses {worst:.2e} (< 1e-4)")))
}

fn criterion_3() -> Outcome {
    let sc = Scenario::default().with_config(|c| c.n_elements = 16)?;
    let an = Analytic::new(&sc)?;
    let d = conditioning_distances(&sc);
    let geo = an.cascade(d.r00, d.t0j);
    let n = 100_000;
    let opt = parallel_samples(n, seed(), "c3-optimal", |r| sample_signal_optimal(&geo, 16, r));
    let opt: Vec<f64> = opt.into_iter().collect::<irs_sg::Result<_>>()?;
    let rnd = parallel_samples(n, seed(), "c3-random", |r| sample_signal_random(&geo, 16, r));
    let rnd: Vec<f64> = rnd.into_iter().collect::<irs_sg::Result<_>>()?;
    let grid = s_grid_for(mean_and_stderr(&opt).value, 25);
    let emp_opt: Vec<f64> = empirical_lt(&opt, &grid).iter().map(|e| e.value).collect();
    let emp_rnd: Vec<f64> = empirical_lt(&rnd, &grid).iter().map(|e| e.value).collect();
    let ana_opt = grid.iter().map(|s| an.lt_signal_indirect(*s, d.r00, d.t0j)).collect::<irs_sg::Result<Vec<_>>>()?;
    let mut rng = irs_sg::rng::stream(seed(), 3);
    let ana_rnd = lt_signal_random(&grid, &geo, 16, &GammaApproxParams::unit_power(), 400, &mut rng)?;
    let gap = max_gap(&ana_opt, &emp_opt);
    // the random-phase model is the pairwise |a_q| family; compare it with
    // the same family at a_q = 1
    let pair_opt = grid
        .iter()
        .map(|s| lt_signal_optimal(*s, &geo, 16, &GammaApproxParams::unit_power(), SignalModel::PairwiseGg))
        .collect::<irs_sg::Result<Vec<_>>>()?;
    let order_ana = pair_opt.iter().zip(&ana_rnd).all(|(o, r)| o <= r);
    let order_emp = emp_opt.iter().zip(&emp_rnd).all(|(o, r)| o <= r);
    let cross = ana_opt.iter().zip(&ana_rnd).map(|(o, r)| o - r).fold(f64::NEG_INFINITY, f64::max);
    let rnd_gap = max_gap(&ana_rnd, &emp_rnd);
    let ok = gap < 0.02 && order_ana && order_emp;
    Ok((
        ok,
        format!(
            "N = 16, r00 = {:.2} m, t0j = {:.2} m, {n} trials: max |LT_analytic - LT_empirical| {gap:.4} (< 0.02); optimal <= random pointwise: empirical {order_emp}, analytic pairwise family {order_ana}; info: coherent optimal minus pairwise random peaks at {cross:.3}, pairwise random vs empirical gap {rnd_gap:.3}",
            d.r00, d.t0j
        ),
    ))
}

fn criterion_4() -> Outcome {
    let sc = Scenario::default();
    let d0 = conditioning_distances(&sc).d0;
    let n = 100_000;
    let beta2 = sc.beta2();
    let mut parts = Vec::new();
    let mut ok = true;
    for (k, p_hat) in [1.0, 20.0].into_iter().enumerate() {
        let unit = parallel_samples(n, seed() + k as u64, "c4-bs", |r| sample_bs_interference_unit(&sc, d0, r));
        let x: Vec<f64> = unit.iter().map(|u| p_hat * beta2 * u).collect();
        let grid = s_grid_for(mean_and_stderr(&x).value, 25);
        let emp: Vec<f64> = empirical_lt(&x, &grid).iter().map(|e| e.value).collect();
        let ana = grid
            .iter()
            .map(|s| lt_bs_interference(*s, d0, sc.deployment.lambda_b, p_hat, sc.alpha, sc.beta))
            .collect::<irs_sg::Result<Vec<_>>>()?;
        let gap = max_gap(&ana, &emp);
        ok &= gap < 0.02;
        parts.push(format!("P_hat = {p_hat}: max gap {gap:.4}"));
    }
    let mut fast = 0.0f64;
    for d0 in [20.0f64, 25.0, 40.0, 80.0, 200.0, 1000.0] {
        for k in 0..81 {
            let s = 10f64.powf(-2.0 + 0.1 * k as f64) * d0.powi(4) / 20.0;
            let a = lt_bs_interference_alpha4(s, d0, 1e-4, 20.0, 1.0)?;
            let g = lt_bs_interference_general(s, d0, 1e-4, 20.0, 4.0, 1.0)?;
            fast = fast.max((a - g).abs());
        }
    }
    ok &= fast < 1e-9;
    Ok((
        ok,
        format!(
            "d0 = {d0:.2} m, {n} PPP draws: {} (< 0.02); alpha=4 fast vs general max diff {fast:.1e} (< 1e-9)",
            parts.join(", ")
        ),
    ))
}

fn criterion_5() -> Outcome {
    let n = 20_000;
    let mut curves = Vec::new();
    let mut emp_means = Vec::new();
    for m in [300usize, 1500] {
        let sc = Scenario::default().with_config(|c| {
            c.n_irs = m;
            c.conditioning = ConditioningMode::Marginal;
            c.oracle_phase_mode = OraclePhaseMode::WorstCase;
            c.interferer_model = InterfererModel::WorstCase;
        })?;
        let batch = simulate_batch(&sc, n, seed())?;
        let unit: Vec<f64> = batch.i_r.iter().map(|v| v / sc.p_indirect).collect();
        for p in [1.0, 20.0] {
            let x: Vec<f64> = unit.iter().map(|u| p * u).collect();
            emp_means.push(mean_and_stderr(&x).value);
            let scp = sc.with_config(|c| c.power_indirect_w = p)?;
            curves.push((m, p, x, scp));
        }
    }
    let lo = emp_means.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = emp_means.iter().cloned().fold(0.0, f64::max);
    let grid: Vec<f64> = (0..41).map(|k| 10f64.powf(-2.0 + k as f64 * (4.0 + (hi / lo).log10()) / 40.0) / hi).collect();
    let mut gaps = Vec::new();
    let mut ratios = Vec::new();
    let mut ana_curves = Vec::new();
    let mut emp_curves = Vec::new();
    for (m, p, x, scp) in &curves {
        let an = Analytic::new(scp)?;
        let ana = grid.iter().map(|s| an.lt_ir(*s, LinkMode::Indirect)).collect::<irs_sg::Result<Vec<_>>>()?;
        let emp: Vec<f64> = empirical_lt(x, &grid).iter().map(|e| e.value).collect();
        gaps.push(format!("M={m},P={p}: {:.3}", max_gap(&ana, &emp)));
        if *p == 1.0 {
            let ratio = an.irs_interference(LinkMode::Indirect).mean_interference() / mean_and_stderr(x).value;
            ratios.push(format!("M={m}: {ratio:.2}"));
        }
        ana_curves.push(ana);
        emp_curves.push(emp);
    }
    let gap = ana_curves.iter().zip(&emp_curves).map(|(a, e)| max_gap(a, e)).fold(0.0, f64::max);
    // order of `curves`: (300,1), (300,20), (1500,1), (1500,20)
    let ordered = |c: &[Vec<f64>]| {
        (0..grid.len()).all(|k| {
            let (a, b, cc, d) = (c[0][k], c[1][k], c[2][k], c[3][k]);
            d <= b && d <= cc && b <= a && cc <= a
        })
    };
    let ord_ana = ordered(&ana_curves);
    let ord_emp = ordered(&emp_curves);
    Ok((
        gap < 0.05 && ord_ana,
        format!(
            "worst-case oracle, {n} trials per M: max gap {gap:.3} (< 0.05) [{}]; dominance LT(1500,20) <= LT(300,20), LT(1500,1) <= LT(300,1): analytic {ord_ana}, empirical {ord_emp}; analytic/empirical mean I_R [{}]",
            gaps.join(", "),
            ratios.join(", ")
        ),
    ))
}

fn criterion_6() -> Outcome {
    let sc = Scenario::default().with_config(|c| {
        c.n_elements = 32;
        c.n_irs = 500;
        c.oracle_phase_mode = OraclePhaseMode::WorstCase;
        c.interferer_model = InterfererModel::WorstCase;
    })?;
    let n = 100_000;
    let batch = simulate_batch(&sc, n, seed())?;
    let an = Analytic::new(&sc)?;
    let cond = Conditioning::from_scenario(&sc);
    let taus = &sc.tau_grid;
    let ana_id = taus.iter().map(|t| an.coverage_indirect(*t, &cond)).collect::<irs_sg::Result<Vec<_>>>()?;
    let ana_d = taus.iter().map(|t| an.coverage_direct(*t, &cond, None)).collect::<irs_sg::Result<Vec<_>>>()?;
    let emp_id: Vec<f64> = coverage_from_batch(&batch, taus, LinkMode::Indirect, sc.noise).iter().map(|c| c.p).collect();
    let emp_d: Vec<f64> = coverage_from_batch(&batch, taus, LinkMode::Direct, sc.noise).iter().map(|c| c.p).collect();
    let g_id = max_gap(&ana_id, &emp_id);
    let g_d = max_gap(&ana_d, &emp_d);
    let mono = non_increasing(&ana_id) && non_increasing(&ana_d) && non_increasing(&emp_id) && non_increasing(&emp_d);
    let dominance = ana_d.iter().zip(&ana_id).all(|(d, i)| d >= i);
    let ok = g_id < 0.03 && g_d < 0.03 && mono && dominance;
    Ok((
        ok,
        format!(
            "N = 32, M = 500, {n} trials, tau -20..20 dB: max gap C_ID {g_id:.3}, C_D {g_d:.3} (< 0.03); non-increasing {mono}; C_D >= C_ID {dominance}; C_ID analytic at 20 dB {:.3} vs empirical {:.3}",
            ana_id.last().unwrap_or(&f64::NAN),
            emp_id.last().unwrap_or(&f64::NAN)
        ),
    ))
}

struct SweepPoint {
    n: usize,
    r_id: f64,
    r_d: f64,
    ee_id: f64,
    ee_d: f64,
}

fn rate_sweep(p_hat: f64) -> irs_sg::Result<Vec<SweepPoint>> {
    let mut out = Vec::new();
    for n in (10..=150).step_by(10) {
        let sc = Scenario::default().with_config(|c| {
            c.n_elements = n;
            c.power_direct_w = p_hat;
        })?;
        let an = Analytic::new(&sc)?;
        let cond = Conditioning::from_scenario(&sc);
        let r_id = an.rate(LinkMode::Indirect, &cond)?;
        let r_d = an.rate(LinkMode::Direct, &cond)?;
        let pm = an.power_model();
        out.push(SweepPoint {
            n,
            r_id,
            r_d,
            ee_id: r_id / power_consumption(&pm, LinkMode::Indirect),
            ee_d: r_d / power_consumption(&pm, LinkMode::Direct),
        });
    }
    Ok(out)
}

/// N values where a - b changes sign, linearly interpolated.
fn crossings(pts: &[SweepPoint], f: impl Fn(&SweepPoint) -> f64) -> Vec<f64> {
    let mut out = Vec::new();
    for w in pts.windows(2) {
        let (a, b) = (f(&w[0]), f(&w[1]));
        if a == 0.0 {
            out.push(w[0].n as f64);
        } else if a * b < 0.0 {
            out.push(w[0].n as f64 + (w[1].n - w[0].n) as f64 * a / (a - b));
        }
    }
    out
}

fn describe(pts: &[SweepPoint]) -> String {
    let first = &pts[0];
    let last = &pts[pts.len() - 1];
    format!(
        "N={}: R_ID {:.4}, R_D {:.4}; N={}: R_ID {:.4}, R_D {:.4}",
        first.n, first.r_id, first.r_d, last.n, last.r_id, last.r_d
    )
}

fn criterion_7(sweeps: &[(f64, Vec<SweepPoint>)]) -> Outcome {
    let c1 = crossings(&sweeps[0].1, |p| p.r_id - p.r_d);
    let c5 = crossings(&sweeps[1].1, |p| p.r_id - p.r_d);
    let ok = c1.len() == 1
        && c5.len() == 1
        && c1[0] < c5[0]
        && (20.0..=45.0).contains(&c1[0])
        && (45.0..=80.0).contains(&c5[0]);
    Ok((
        ok,
        format!(
            "rate crossings N: P_hat=1 {c1:.1?} (want one in [20, 45]), P_hat=5 {c5:.1?} (want one in [45, 80]); P_hat=1 {}; P_hat=5 {}",
            describe(&sweeps[0].1),
            describe(&sweeps[1].1)
        ),
    ))
}

fn criterion_8(sweeps: &[(f64, Vec<SweepPoint>)]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (p_hat, pts) in sweeps {
        let rc = crossings(pts, |p| p.r_id - p.r_d);
        let ec = crossings(pts, |p| p.ee_id - p.ee_d);
        let this = rc.len() == 1 && ec.len() == 1 && ec[0] > rc[0];
        ok &= this;
        parts.push(format!("P_hat={p_hat}: rate {rc:.1?}, EE {ec:.1?}"));
    }
    Ok((ok, format!("EE crossing must exceed rate crossing: {}", parts.join("; "))))
}

fn criterion_9() -> Outcome {
    let base = Scenario::default().with_config(|c| c.n_elements = 100)?;
    let bs_on_disk = base.deployment.lambda_b * std::f64::consts::PI * base.deployment.radius.powi(2);
    let mut rows = Vec::new();
    for k in 1..=19 {
        let a = 0.05 * k as f64;
        // A = lambda_R / (lambda_R + lambda_B) fixes the IRS count
        let m = (a / (1.0 - a) * bs_on_disk).round().max(1.0) as usize;
        let sc = base.with_config(|c| c.n_irs = m)?;
        let an = Analytic::new(&sc)?;
        let cond = Conditioning::from_scenario(&sc);
        let c_id = an.coverage_indirect(sc.tau, &cond)?;
        let c_d = an.coverage_direct(sc.tau, &cond, None)?;
        let a_eff = sc.deployment.lambda_r() / (sc.deployment.lambda_r() + sc.deployment.lambda_b);
        rows.push((a_eff, m, mixture(a_eff, c_d, c_id), c_d, c_id));
    }
    let (imin, min) = rows
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .2.total_cmp(&b.1 .2))
        .map(|(i, r)| (i, r.0))
        .expect("non-empty");
    let interior = imin > 0 && imin + 1 < rows.len() && (0.4..=0.8).contains(&min);
    // endpoints of the mixture are the pure modes, exactly
    let sc = base.with_config(|c| c.n_irs = 1500)?;
    let an = Analytic::new(&sc)?;
    let cond = Conditioning::from_scenario(&sc);
    let r0 = overall_metrics(&an, &UserMix::fixed(0.0)?, &cond)?;
    let r1 = overall_metrics(&an, &UserMix::fixed(1.0)?, &cond)?;
    let exact = r0.c == r0.c_d && r0.r == r0.r_d && r0.ee == r0.ee_d && r1.c == r1.c_id && r1.r == r1.r_id && r1.ee == r1.ee_id;
    let table: Vec<String> = rows.iter().step_by(3).map(|r| format!("A={:.2} (M={}) C={:.3}", r.0, r.1, r.2)).collect();
    Ok((
        interior && exact,
        format!(
            "N = 100, tau = {:.0} dB: argmin of C at A = {min:.2} (want interior, in [0.4, 0.8]); endpoints exact {exact}; {}",
            10.0 * sc.tau.log10(),
            table.join(", ")
        ),
    ))
}

fn criterion_10() -> Outcome {
    // (a) two routes to the ergodic rate
    let scs = [
        Scenario::default().with_config(|c| {
            c.n_irs = 100;
            c.n_elements = 8;
        })?,
        Scenario::default().with_config(|c| {
            c.n_irs = 300;
            c.n_elements = 16;
            c.power_direct_w = 5.0;
        })?,
        Scenario::default().with_config(|c| {
            c.n_irs = 200;
            c.n_elements = 32;
            c.lambda_bs_per_m2 = 5e-5;
        })?,
    ];
    let mut worst_route = 0.0f64;
    let mut routes = Vec::new();
    for sc in &scs {
        let an = Analytic::new(sc)?;
        let cond = Conditioning::from_scenario(sc);
        let h = an.rate(LinkMode::Direct, &cond)?;
        let c = an.rate_ccdf_route(LinkMode::Direct, &cond)?;
        worst_route = worst_route.max((h - c).abs() / h);
        routes.push(format!("direct {h:.4}/{c:.4}"));
        let h = an.rate(LinkMode::Indirect, &cond)?;
        // the adaptive route is too slow here; Gauss-Legendre in ln t over
        // [1e-9, 1e4] with P = 1 below
        let (lo, hi) = (1e-9f64, 1e4f64);
        let mut c = lo;
        for (u, w) in gauss_legendre_on(96, lo.ln(), hi.ln()) {
            let t = u.exp();
            c += w * an.coverage_indirect(t, &cond)? * t / (1.0 + t);
        }
        worst_route = worst_route.max((h - c).abs() / h);
        routes.push(format!("indirect {h:.3e}/{c:.3e}"));
    }
    // (b) worst-case bound on joint draws
    let mut violations = 0;
    let draws = 10_000;
    let mut rng = irs_sg::rng::stream(seed(), 10);
    for _ in 0..draws {
        let links: Vec<(f64, Vec<f64>, Vec<f64>, Vec<f64>)> = (0..4)
            .map(|_| {
                let n = rng.random_range(1..=64);
                let mag = |r: &mut irs_sg::rng::StreamRng| irs_sg::channel::sample_rayleigh(irs_sg::channel::UNIT_POWER_SIGMA, r);
                let g: Vec<f64> = (0..n).map(|_| mag(&mut rng)).collect();
                let f: Vec<f64> = (0..n).map(|_| mag(&mut rng)).collect();
                let b: Vec<f64> = (0..n).map(|_| std::f64::consts::TAU * rng.random::<f64>()).collect();
                (rng.random::<f64>() * 1e-6, g, f, b)
            })
            .collect();
        let refs: Vec<ReflectedLink<'_>> = links
            .iter()
            .map(|(p, g, f, b)| ReflectedLink {
                path_gain: *p,
                g_mag: g,
                f_mag: f,
                residual: b,
            })
            .collect();
        if phase_bearing_ir(&refs) > worst_case_ir_bound(&refs) {
            violations += 1;
        }
    }
    // (c) Z moments against the worst-case oracle at M = 1500
    let sc = Scenario::default().with_config(|c| c.interferer_model = InterfererModel::WorstCase)?;
    let an = Analytic::new(&sc)?;
    let ir = an.irs_interference(LinkMode::Indirect);
    let t = midpoint_distance(100.0, &sc.deployment);
    let (mu, var) = ir.z_at(t);
    let z = parallel_samples(10_000, seed(), "c10-z", |r| sample_z(&sc, ir.m_eff(), t, OraclePhaseMode::WorstCase, r));
    let zm = mean_and_stderr(&z).value;
    let zv = z.iter().map(|v| (v - zm) * (v - zm)).sum::<f64>() / (z.len() - 1) as f64;
    let em = (zm - mu).abs() / mu;
    let ev = (zv - var).abs() / var;
    let ok = worst_route < 0.02 && violations == 0 && em < 0.1 && ev < 0.1;
    Ok((
        ok,
        format!(
            "Hamdi vs CCDF-route worst rel diff {worst_route:.2e} (< 2%) [{}]; worst-case bound violations {violations}/{draws}; Z at M = 1500: mean rel err {em:.3}, variance rel err {ev:.3} (< 0.1)",
            routes.join(", ")
        ),
    ))
}

fn main() {
    let t0 = Instant::now();
    let mut verdicts = Vec::new();
    verdicts.extend(run(1, "special functions", 10.0, criterion_1));
    verdicts.extend(run(2, "Gil-Pelaez oracle", 10.0, criterion_2));
    verdicts.extend(run(3, "signal LT vs Monte Carlo", 300.0, criterion_3));
    verdicts.extend(run(4, "BS-interference LT vs Monte Carlo", 300.0, criterion_4));
    verdicts.extend(run(5, "IRS-interference LT vs Monte Carlo", 900.0, criterion_5));
    verdicts.extend(run(6, "coverage validation", 1800.0, criterion_6));
    let want_sweeps = std::env::var("ACCEPTANCE_ONLY")
        .map(|o| o.split(',').any(|s| matches!(s.trim(), "7" | "8")))
        .unwrap_or(true);
    if want_sweeps {
        let t = Instant::now();
        let sweeps: irs_sg::Result<Vec<(f64, Vec<SweepPoint>)>> =
            [1.0, 5.0].into_iter().map(|p| rate_sweep(p).map(|s| (p, s))).collect();
        let sweep_s = t.elapsed().as_secs_f64();
        match sweeps {
            Ok(sweeps) => {
                verdicts.extend(run(7, "rate crossing in N", 1800.0 - sweep_s, || criterion_7(&sweeps)));
                verdicts.extend(run(8, "EE crossing beyond rate crossing", 600.0, || criterion_8(&sweeps)));
            }
            Err(e) => {
                for id in [7, 8] {
                    verdicts.extend(run(id, "rate/EE sweep", 1.0, || Err(e.clone())));
                }
            }
        }
    }
    verdicts.extend(run(9, "overall-mixture dip in A", 1200.0, criterion_9));
    verdicts.extend(run(10, "consistency checks", 600.0, criterion_10));
    let fails = verdicts.iter().filter(|v| !v.pass).count();
    println!(
        "acceptance: {} PASS, {} FAIL, total {:.0} s",
        verdicts.len() - fails,
        fails,
        t0.elapsed().as_secs_f64()
    );
    for v in verdicts.iter().filter(|v| !v.pass) {
        println!("  red: {}", v.line.split(';').next().unwrap_or(""));
    }
    let errors = verdicts.iter().any(|v| v.line.contains("error:"));
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if errors || (strict && fails > 0) {
        std::process::exit(1);
    }
}
