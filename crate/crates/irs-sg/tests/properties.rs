use irs_sg::interference::{lt_bs_interference, LinkMode, ZLaw};
use irs_sg::metrics::{energy_efficiency, mixture, Analytic, PowerModel};
use irs_sg::montecarlo::{mean_and_stderr, sample_bs_interference_unit, wilson, BS_DISK_FACTOR};
use irs_sg::specfun::{gauss_2f1, gil_pelaez_ccdf, QuadratureSpec};
use irs_sg::Scenario;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn small(z_law: ZLaw, m: usize, n: usize) -> Scenario {
    Scenario::default()
        .with_config(|c| {
            c.n_irs = m;
            c.n_elements = n;
            c.z_law = z_law;
        })
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bs_transform_is_a_decreasing_probability(d0 in 21.0f64..400.0, s1 in 1e-2f64..1e9, f in 1.0f64..1e3) {
        let a = lt_bs_interference(s1, d0, 1e-4, 20.0, 4.0, 1.0).unwrap();
        let b = lt_bs_interference(s1 * f, d0, 1e-4, 20.0, 4.0, 1.0).unwrap();
        prop_assert!(a > 0.0 && a <= 1.0);
        prop_assert!(b <= a + 1e-12);
    }

    #[test]
    fn irs_transform_decreases_in_s_and_m(k in -2i32..6, gaussian in any::<bool>()) {
        let law = if gaussian { ZLaw::Gaussian } else { ZLaw::Gamma };
        let few = small(law, 100, 16);
        let many = small(law, 400, 16);
        let (a, b) = (Analytic::new(&few).unwrap(), Analytic::new(&many).unwrap());
        let mean = a.irs_interference(LinkMode::Indirect).mean_interference();
        let s = 10f64.powi(k) / mean;
        let l1 = a.lt_ir(s, LinkMode::Indirect).unwrap();
        let l2 = a.lt_ir(2.0 * s, LinkMode::Indirect).unwrap();
        prop_assert!(l1 > 0.0 && l1 <= 1.0);
        prop_assert!(l2 <= l1 + 1e-12);
        prop_assert!(b.lt_ir(s, LinkMode::Indirect).unwrap() <= l1 + 1e-12);
    }

    #[test]
    fn direct_coverage_is_monotone_in_tau(d0 in 25.0f64..200.0, db in -20.0f64..20.0) {
        let sc = small(ZLaw::Gamma, 150, 16);
        let an = Analytic::new(&sc).unwrap();
        let t = 10f64.powf(db / 10.0);
        let lo = an.coverage_direct_at(t, d0).unwrap();
        let hi = an.coverage_direct_at(2.0 * t, d0).unwrap();
        prop_assert!((0.0..=1.0).contains(&lo));
        prop_assert!(hi <= lo + 1e-9);
    }

    #[test]
    fn energy_efficiency_is_rate_over_power(r in 0.0f64..20.0, p in 1e-3f64..1e3) {
        let ee = energy_efficiency(r, p).unwrap();
        prop_assert!((ee * p - r).abs() <= 1e-12 * r.max(1.0));
    }

    #[test]
    fn mixture_stays_between_its_parts(a in 0.0f64..=1.0, x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let m = mixture(a, x, y);
        prop_assert!(m >= x.min(y) - 1e-15 && m <= x.max(y) + 1e-15);
    }

    #[test]
    fn indirect_power_grows_with_elements(n in 1usize..200) {
        let sc = small(ZLaw::Gamma, 150, n);
        let more = small(ZLaw::Gamma, 150, n + 1);
        let (a, b) = (PowerModel::from_scenario(&sc), PowerModel::from_scenario(&more));
        prop_assert!(b.p_id() > a.p_id());
        prop_assert_eq!(a.p_d(), b.p_d());
    }

    #[test]
    fn hypergeometric_matches_arctangent(x in 0.0f64..5.0) {
        // 2F1(1, 1/2; 3/2; -x^2) = atan(x)/x
        let v = gauss_2f1(1.0, 0.5, 1.5, -x * x).unwrap();
        let want = if x == 0.0 { 1.0 } else { x.atan() / x };
        prop_assert!((v - want).abs() <= 1e-12);
    }

    #[test]
    fn exponential_ccdf_by_inversion(rate in 0.2f64..5.0, q in 0.05f64..0.95) {
        let x = -(q.ln()) / rate;
        let cf = |w: f64| Complex64::new(rate, 0.0) / Complex64::new(rate, w);
        let p = gil_pelaez_ccdf(cf, x, &QuadratureSpec::default().with_tol(1e-9, 1e-7)).unwrap();
        prop_assert!((p - q).abs() < 1e-5, "{} vs {}", p, q);
    }
}

#[test]
fn wilson_interval_brackets_the_estimate() {
    for (k, n) in [(0, 10), (3, 10), (10, 10), (500, 1000), (1, 100_000)] {
        let w = wilson(k, n);
        assert!(w.lo <= w.p && w.p <= w.hi, "{k}/{n}: {w:?}");
        assert!((0.0..=1.0).contains(&w.lo) && (0.0..=1.0).contains(&w.hi));
    }
}

#[test]
fn stderr_shrinks_with_root_of_trials() {
    let a = wilson(300, 1000);
    let b = wilson(600, 2000);
    assert!((a.stderr / b.stderr - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn bs_interference_mean_matches_campbell() {
    let sc = Scenario::default();
    let d = sc.deployment;
    let d0 = 60.0;
    let n = 40_000;
    let mut rng = irs_sg::rng::stream(17, 3);
    let v: Vec<f64> = (0..n).map(|_| sample_bs_interference_unit(&sc, d0, &mut rng)).collect();
    let est = mean_and_stderr(&v);
    // lambda pi [u^(1-a/2)/(a/2-1)] between d0^2 and (3R)^2 + h^2, u = rho^2 + h^2
    let a = sc.alpha;
    let outer = (BS_DISK_FACTOR * d.radius).powi(2) + d.h_b * d.h_b;
    let want = d.lambda_b * PI * ((d0 * d0).powf(1.0 - a / 2.0) - outer.powf(1.0 - a / 2.0)) / (a / 2.0 - 1.0);
    assert!((est.value - want).abs() < 4.0 * est.stderr, "{} +- {} vs {want}", est.value, est.stderr);
}
