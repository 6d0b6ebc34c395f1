use proptest::prelude::*;
use relaycov::analysis::composition::{composition_count, exact_beta};
use relaycov::analysis::{combine, enumerate_compositions, QuadratureConfig};
use relaycov::model::{association_distance_pdf, bs_gain_pmf, joint_gain_pmf, nakagami_alpha, ue_gain_pmf};
use relaycov::simulate::binomial_interval;
use relaycov::*;

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gain_pmfs_are_normalized(nb in 1u32..=256, nu in 1u32..=32) {
        let p = NetworkParams64::table_one().with_bs_antennas(nb).unwrap().with_ue_antennas(nu).unwrap();
        for pmf in [bs_gain_pmf(&p), ue_gain_pmf(&p), joint_gain_pmf(&p)] {
            let total: f64 = pmf.entries().iter().map(|l| l.probability).sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert!(pmf.entries().iter().all(|l| l.probability > 0.0 && l.gain > 0.0));
            let gains: Vec<f64> = pmf.entries().iter().map(|l| l.gain).collect();
            for (i, g) in gains.iter().enumerate() {
                prop_assert!(!gains[..i].contains(g));
            }
        }
    }

    #[test]
    fn association_pdf_is_normalized(density in 1e-5f64..1e-2, radius in 5.0f64..200.0) {
        let mut spec = ParamSpec64::table_one();
        spec.bs_density = density;
        spec.bs_los_radius = radius;
        let link = LinkSpec::new(&spec.validate().unwrap(), LinkKind::Direct);
        let integral = simpson(
            |x| if x > 0.0 { association_distance_pdf(&link, x).unwrap() } else { 0.0 },
            0.0,
            // the support is open at the ball edge
            radius * (1.0 - 1e-12),
            40_000,
        );
        prop_assert!((integral - 1.0).abs() < 1e-8, "{integral}");
    }

    #[test]
    fn composition_weights_sum_to_one(m in 1u32..=6, kappa in 1u32..=10) {
        let all = enumerate_compositions(m, kappa).unwrap();
        prop_assert_eq!(all.len() as u128, composition_count(m, kappa));
        let total: i128 = all.iter().map(|c| exact_beta(c).unwrap()).sum();
        prop_assert_eq!(total, 1);
    }

    #[test]
    fn bound_cdf_never_exceeds_gamma_cdf(m in 1u32..=8, x in 1e-3f64..30.0) {
        let f = NakagamiFading::<f64>::new(m).unwrap();
        prop_assert!(f.lower_bound_cdf(x) <= f.exact_cdf(x) + 1e-15);
        let alpha: f64 = nakagami_alpha(m);
        prop_assert!((1.0..=m as f64).contains(&alpha));
    }

    #[test]
    fn db_round_trip(x in -150.0f64..150.0) {
        prop_assert!((linear_to_db(db_to_linear(x)) - x).abs() < 1e-9);
    }

    #[test]
    fn relay_never_hurts(d in 0.0f64..=1.0, br in 0.0f64..=1.0, rd in 0.0f64..=1.0) {
        let t = combine(d, br, rd);
        prop_assert!(t >= d && t <= 1.0);
        prop_assert!(t >= br * rd - 1e-15);
    }

    #[test]
    fn interval_contains_estimate(trials in 1u64..100_000, frac in 0.0f64..=1.0, level in 0.5f64..0.999) {
        let successes = (frac * trials as f64).round() as u64;
        let (lo, hi) = binomial_interval(successes, trials, level).unwrap();
        let p = successes as f64 / trials as f64;
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn coverage_is_a_probability_and_falls_with_threshold(
        nu in 1u32..=6,
        nb in 2u32..=32,
        pb in 25.0f64..45.0,
        density in 5e-5f64..2e-3,
        tau_db in -5.0f64..20.0,
    ) {
        let q = QuadratureConfig { outer_nodes: 32, inner_nodes: 32, abs_tol: 1e-6, self_check: false };
        let mut spec = ParamSpec64::table_one();
        spec.ue_antennas = f64::from(nu);
        spec.bs_antennas = f64::from(nb);
        spec.bs_power_dbm = pb;
        spec.bs_density = density;
        let p = spec.validate().unwrap();
        for mode in [AnalysisMode::Correlated, AnalysisMode::Uncorrelated] {
            let lo = coverage_breakdown(&p, db_to_linear(tau_db), &q, mode).unwrap();
            let hi = coverage_breakdown(&p, db_to_linear(tau_db + 3.0), &q, mode).unwrap();
            for v in [lo.direct, lo.br, lo.rd, lo.total] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
            prop_assert!(hi.total <= lo.total + 1e-12);
            prop_assert!(lo.total >= lo.direct);
        }
    }
}
