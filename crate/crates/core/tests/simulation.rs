use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relaycov::analysis::QuadratureConfig;
use relaycov::simulate::{sample_realization, CorrelationMode, RealizationSampler, TrialStreams};
use relaycov::*;

fn table_one() -> NetworkParams64 {
    NetworkParams64::table_one()
}

#[test]
fn bs_count_and_void_probability() {
    let p = table_one();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 100_000;
    let (mut total, mut empty) = (0usize, 0usize);
    let (mut rd_interferers, mut rd_nonempty) = (0usize, 0usize);
    for _ in 0..n {
        let real = sample_realization(&p, CorrelationMode::Shared, &mut rng).unwrap();
        let d = &real.direct[0];
        total += usize::from(d.assoc_distance.is_some()) + d.interferers.len();
        empty += usize::from(d.is_empty());
        if !real.rd[0].is_empty() {
            rd_nonempty += 1;
            rd_interferers += real.rd[0].interferers.len();
        }
    }
    let mean = total as f64 / n as f64;
    assert!((mean - 2.0 * std::f64::consts::PI).abs() < 0.05, "mean BS count {mean}");
    let void = empty as f64 / n as f64;
    let want = (-2.0 * std::f64::consts::PI).exp();
    assert!((void - want).abs() < 5.0 * (want / n as f64).sqrt(), "void {void} vs {want}");
    // interfering UEs: rho * LoS-thinned BS density over the relay ball,
    // drawn only when a relay exists
    let mean_rd = rd_interferers as f64 / rd_nonempty as f64;
    let want_rd = 1.26e-4 * std::f64::consts::PI * 400.0;
    assert!((mean_rd - want_rd).abs() < 0.01, "{mean_rd} vs {want_rd}");
}

#[test]
fn nearest_distance_follows_conditioned_rayleigh_law() {
    let p = table_one();
    let lambda = p.bs_density();
    let xi = 1.0 - (-std::f64::consts::PI * lambda * 1e4).exp();
    let cdf = |x: f64| (1.0 - (-std::f64::consts::PI * lambda * x * x).exp()) / xi;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut xs: Vec<f64> = Vec::new();
    while xs.len() < 100_000 {
        let real = sample_realization(&p, CorrelationMode::Shared, &mut rng).unwrap();
        if let Some(x) = real.direct[0].assoc_distance {
            xs.push(x);
        }
    }
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let ks = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max);
    assert!(ks < 0.01, "KS statistic {ks}");
}

#[test]
fn shared_geometry_is_common_to_all_antennas() {
    let p = table_one().with_ue_antennas(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let real = sample_realization(&p, CorrelationMode::Shared, &mut rng).unwrap();
        assert_eq!(real.direct.len(), 1);
        let d = &real.direct[0];
        assert_eq!(d.antennas, 4);
        if !d.is_empty() {
            assert_eq!(d.desired_fading.len(), 4);
            assert_eq!(d.interferer_fading.len(), 4 * d.interferers.len());
            assert!(d.interferers.iter().all(|i| i.distance >= d.assoc_distance.unwrap()));
        }
        let br = &real.br;
        if !br.is_empty() {
            assert_eq!(br.desired_power, LinkSpec::new(&p, LinkKind::BaseToRelay).received_power(40.0, br.assoc_distance.unwrap()));
        }
        let indep = sample_realization(&p, CorrelationMode::IndependentPerAntenna, &mut rng).unwrap();
        assert_eq!(indep.direct.len(), 4);
        assert_eq!(indep.rd.len(), 4);
        assert!(indep.direct.iter().all(|s| s.antennas == 1));
    }
}

#[test]
fn modes_coincide_for_one_antenna() {
    let p = table_one().with_ue_antennas(1).unwrap();
    let shared = SimConfig::new(50_000, 9);
    let indep = shared.clone().with_correlation(CorrelationMode::IndependentPerAntenna);
    let a = estimate_coverage(&p, 10.0, &shared).unwrap();
    let b = estimate_coverage(&p, 10.0, &indep).unwrap();
    assert_eq!(a.probability.to_bits(), b.probability.to_bits());
    assert_eq!(a.method, Method::SimShared);
    assert_eq!(b.method, Method::SimIndep);
}

#[test]
fn extra_antennas_only_add_direct_coverage_events() {
    let streams = TrialStreams::new(4);
    let samplers: Vec<RealizationSampler<f64>> = [1, 2, 4, 8]
        .iter()
        .map(|&n| {
            RealizationSampler::new(&table_one().with_ue_antennas(n).unwrap(), CorrelationMode::Shared, FadingModel::Gamma)
                .unwrap()
        })
        .collect();
    let noise = table_one().noise_power();
    for t in 0..5_000 {
        let covered: Vec<bool> = samplers
            .iter()
            .map(|s| s.sample_link(LinkKind::Direct, &mut streams.substream(t, 0))[0].covered(10.0, noise))
            .collect();
        assert!(covered.windows(2).all(|w| w[1] || !w[0]), "trial {t}: {covered:?}");
    }
    let sim = SimConfig::new(50_000, 4);
    let probs: Vec<f64> = [1, 2, 4, 8]
        .iter()
        .map(|&n| estimate_coverage(&table_one().with_ue_antennas(n).unwrap(), 10.0, &sim).unwrap().probability)
        .collect();
    assert!(probs.windows(2).all(|w| w[1] >= w[0]), "{probs:?}");
}

#[test]
fn half_void_probability_caps_direct_coverage() {
    let ln2 = std::f64::consts::LN_2;
    let p = table_one().with_bs_density(ln2 / (std::f64::consts::PI * 1e4)).unwrap();
    let sim = SimConfig::new(100_000, 5);
    for tau in [1e-6, 1.0, 10.0] {
        let r = estimate_link_coverage(&p, tau, LinkKind::Direct, &sim).unwrap();
        assert!(r.interval.unwrap().0 <= 0.5, "{r:?}");
    }
    let r = estimate_link_coverage(&p, 1e-9, LinkKind::Direct, &sim).unwrap();
    assert!((r.probability - 0.5).abs() < 0.01);
}

#[test]
fn single_trial_is_deterministic() {
    let p = table_one();
    let sim = SimConfig::new(1, 123);
    let a = estimate_coverage(&p, 10.0, &sim).unwrap();
    let b = estimate_coverage(&p, 10.0, &sim).unwrap();
    assert_eq!(a, b);
    assert!(a.probability == 0.0 || a.probability == 1.0);
}

#[test]
fn interval_shrinks_as_inverse_root_trials() {
    let p = table_one();
    let width = |n| {
        let (lo, hi) = estimate_coverage(&p, 10.0, &SimConfig::new(n, 6)).unwrap().interval.unwrap();
        hi - lo
    };
    let ratio = width(10_000) / width(100_000);
    assert!((ratio - 10f64.sqrt()).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn worker_count_does_not_change_estimates() {
    let p = table_one();
    let base = SimConfig::new(30_000, 77).with_correlation(CorrelationMode::IndependentPerAntenna);
    let a = estimate_coverage(&p, 10.0, &base.clone().with_workers(1)).unwrap();
    let b = estimate_coverage(&p, 10.0, &base.clone().with_workers(4)).unwrap();
    let c = estimate_coverage(&p, 10.0, &base).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn rejects_bad_configs() {
    let p = table_one();
    assert!(estimate_coverage(&p, 10.0, &SimConfig::new(0, 1)).is_err());
    let mut sim = SimConfig::new(10, 1);
    sim.confidence_level = 1.0;
    assert!(estimate_coverage(&p, 10.0, &sim).is_err());
}

#[test]
fn huge_threshold_gives_no_coverage() {
    let r = estimate_coverage(&table_one(), 1e12, &SimConfig::new(20_000, 8)).unwrap();
    assert_eq!(r.probability, 0.0);
    assert_eq!(r.interval.unwrap().0, 0.0);
}

#[test]
fn shared_simulation_near_reference_points() {
    // Gamma fading; the closed form with the bound CDF sits slightly above
    let p = table_one().with_ue_antennas(8).unwrap();
    let sim = SimConfig::new(400_000, 10);
    let at10 = estimate_coverage(&p, 10.0, &sim).unwrap().probability;
    assert!((at10 - 0.82).abs() <= 0.01, "{at10}");
    let tau14 = db_to_linear(14.0);
    let shared = estimate_coverage(&p, tau14, &sim).unwrap().probability;
    assert!((shared - 0.51).abs() <= 0.03, "{shared}");
    let indep = estimate_coverage(&p, tau14, &sim.clone().with_correlation(CorrelationMode::IndependentPerAntenna))
        .unwrap()
        .probability;
    assert!((indep - 0.83).abs() <= 0.03, "{indep}");
}

#[test]
fn bound_fading_simulation_reproduces_each_closed_form() {
    // With desired-signal fading drawn from the bound law the closed forms
    // are exact, so they must sit inside the simulation's interval.
    let p = table_one();
    let q = QuadratureConfig::default();
    let sim = SimConfig::new(200_000, 21).with_fading(FadingModel::LowerBound);
    for tau_db in [6.0, 14.0] {
        let tau = db_to_linear(tau_db);
        let b = coverage_breakdown(&p, tau, &q, AnalysisMode::Correlated).unwrap();
        for (kind, want) in [
            (LinkKind::Direct, b.direct),
            (LinkKind::BaseToRelay, b.br),
            (LinkKind::RelayToDestination, b.rd),
        ] {
            let r = estimate_link_coverage(&p, tau, kind, &sim).unwrap();
            let (lo, hi) = r.interval.unwrap();
            assert!(lo <= want && want <= hi, "{kind:?} at {tau_db} dB: {want} vs {r:?}");
        }
    }
}
