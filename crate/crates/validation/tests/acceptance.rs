//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per check; exits nonzero if any check fails.
//!
//! Run with `cargo test -p relaycov-validation --test acceptance`.

use std::time::Instant;

use relaycov::analysis::{log_grid, QuadratureConfig};
use relaycov::model::{bs_gain_pmf, joint_gain_pmf, ue_gain_pmf, association_distance_pdf, GainDistribution};
use relaycov::simulate::CorrelationMode;
use relaycov::*;

const SIM_TRIALS: u64 = 1_000_000;
const SEED: u64 = 20_240_611;

struct Report {
    failures: Vec<String>,
    checks: usize,
}

impl Report {
    fn check(&mut self, criterion: &str, pass: bool, detail: String) {
        self.checks += 1;
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {criterion}: {detail}");
        if !pass {
            self.failures.push(criterion.to_string());
        }
    }
}

fn quad() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn table_one() -> NetworkParams64 {
    NetworkParams64::table_one()
}

fn db(x: f64) -> f64 {
    db_to_linear(x)
}

fn within(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol
}

fn inside(ci: Option<(f64, f64)>, value: f64) -> bool {
    ci.is_some_and(|(lo, hi)| lo <= value && value <= hi)
}

fn fmt_ci(r: &CoverageResult64) -> String {
    let (lo, hi) = r.interval.unwrap();
    format!("{:.4} [{lo:.4}, {hi:.4}]", r.probability)
}

fn fig2(r: &mut Report) {
    let c = "1 Fig.2";
    let p = table_one();
    for (n, want) in [(1, 0.36), (2, 0.48), (8, 0.82)] {
        let got = coverage_total(&p.with_ue_antennas(n).unwrap(), db(10.0), &quad(), AnalysisMode::Correlated).unwrap();
        r.check(c, within(got, want, 0.03), format!("N_u={n} tau=10dB correlated {got:.4} vs {want} +-0.03"));
    }
    let start = Instant::now();
    for n in [1, 2, 8] {
        let pn = p.with_ue_antennas(n).unwrap();
        for t in (0..=20).step_by(2) {
            coverage_total(&pn, db(f64::from(t)), &quad(), AnalysisMode::Correlated).unwrap();
        }
    }
    let secs = start.elapsed().as_secs_f64();
    r.check(c, secs < 60.0, format!("tau 0..20 dB x N_u {{1,2,8}} grid in {secs:.1} s (< 60 s)"));
}

fn correlation_gap(r: &mut Report) {
    let c = "2 correlation gap";
    let p = table_one().with_ue_antennas(8).unwrap();
    let tau = db(14.0);
    let unc = coverage_total(&p, tau, &quad(), AnalysisMode::Uncorrelated).unwrap();
    r.check(c, within(unc, 0.83, 0.03), format!("tau=14dB N_u=8 uncorrelated analysis {unc:.4} vs 0.83 +-0.03"));
    let corr = coverage_total(&p, tau, &quad(), AnalysisMode::Correlated).unwrap();
    let sim = estimate_coverage(&p, tau, &SimConfig::new(SIM_TRIALS, SEED)).unwrap();
    r.check(
        c,
        within(sim.probability, 0.51, 0.03),
        format!("shared simulation {} vs 0.51 +-0.03", fmt_ci(&sim)),
    );
    r.check(
        c,
        inside(sim.interval, corr),
        format!("correlated analysis {corr:.4} inside 99% CI of shared simulation {}", fmt_ci(&sim)),
    );
}

fn table_three(r: &mut Report) {
    let c = "3 Table III";
    let p = table_one();
    for (mode, want) in [
        (AnalysisMode::Correlated, [4, 5, 7, 12]),
        (AnalysisMode::Uncorrelated, [2, 3, 4, 5]),
    ] {
        let got: Vec<u32> = [0.6, 0.7, 0.8, 0.9]
            .iter()
            .map(|&xi| min_antennas(&p, db(10.0), xi, mode, &quad(), 32).unwrap())
            .collect();
        r.check(c, got == want, format!("{mode:?} N_min {got:?} vs {want:?}"));
    }
}

fn fig3(r: &mut Report) {
    let c = "4 Fig.3";
    let p = table_one().with_ue_antennas(8).unwrap();
    let b = coverage_breakdown(&p, db(10.0), &quad(), AnalysisMode::Correlated).unwrap();
    r.check(c, within(b.total, 0.83, 0.03), format!("P_b=35dBm total {:.4} vs 0.83 +-0.03", b.total));
    r.check(c, within(b.direct, 0.59, 0.03), format!("P_b=35dBm direct {:.4} vs 0.59 +-0.03", b.direct));
    let mut worst = f64::INFINITY;
    for pb in 30..=45 {
        let q = p.with_bs_power(db(f64::from(pb))).unwrap();
        let b = coverage_breakdown(&q, db(10.0), &quad(), AnalysisMode::Correlated).unwrap();
        worst = worst.min(b.total - b.direct);
    }
    r.check(c, worst >= 0.0, format!("min(total - direct) over P_b 30..45 dBm = {worst:.3e}"));
}

fn fig4(r: &mut Report) {
    let c = "5 Fig.4";
    let p = table_one();
    let grid = log_grid(1e-4, 1e-2, 40).unwrap();
    let step = 2.0 / 39.0;
    for (nb, want_opt, want_cov) in [(4, 1.26e-3, 0.59), (8, 1.58e-3, 0.83), (16, 1.78e-3, 0.95)] {
        let q = p.with_bs_antennas(nb).unwrap();
        let (opt, best) = optimal_bs_density(&q, db(10.0), &grid, &quad()).unwrap();
        let steps = (opt / want_opt).log10().abs() / step;
        r.check(
            c,
            steps <= 1.0 + 1e-9,
            format!("N_b={nb} optimum {opt:.3e} (coverage {best:.4}) vs {want_opt:.2e}: {steps:.2} grid steps (<= 1)"),
        );
        let at = coverage_total(&q.with_bs_density(1e-3).unwrap(), db(10.0), &quad(), AnalysisMode::Correlated).unwrap();
        r.check(c, within(at, want_cov, 0.03), format!("N_b={nb} coverage at 1e-3 {at:.4} vs {want_cov} +-0.03"));
    }
}

/// Analysis against simulation at matched modes. The primary check uses
/// Gamma fading; the secondary one draws the desired-signal fading from the
/// lower-bound law the closed forms assume, so a mismatch there would be an
/// implementation error rather than approximation error.
fn oracle(r: &mut Report) {
    let p = table_one();
    for (fading, c) in [
        (FadingModel::Gamma, "6 oracle (Gamma fading)"),
        (FadingModel::LowerBound, "6 oracle (lower-bound fading, supplementary)"),
    ] {
        for t in [6.0, 10.0, 14.0] {
            let tau = db(t);
            let shared = SimConfig::new(SIM_TRIALS, SEED).with_fading(fading);
            let indep = shared.clone().with_correlation(CorrelationMode::IndependentPerAntenna);
            let corr = coverage_breakdown(&p, tau, &quad(), AnalysisMode::Correlated).unwrap();
            let unc = coverage_total(&p, tau, &quad(), AnalysisMode::Uncorrelated).unwrap();
            let cases = [
                ("direct", corr.direct, estimate_link_coverage(&p, tau, LinkKind::Direct, &shared)),
                ("br", corr.br, estimate_link_coverage(&p, tau, LinkKind::BaseToRelay, &shared)),
                ("rd", corr.rd, estimate_link_coverage(&p, tau, LinkKind::RelayToDestination, &shared)),
                ("total correlated", corr.total, estimate_coverage(&p, tau, &shared)),
                ("total uncorrelated", unc, estimate_coverage(&p, tau, &indep)),
            ];
            for (name, analytic, sim) in cases {
                let sim = sim.unwrap();
                r.check(
                    c,
                    inside(sim.interval, analytic),
                    format!("tau={t}dB {name}: analysis {analytic:.4}, simulation {}", fmt_ci(&sim)),
                );
            }
        }
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

fn properties(r: &mut Report) {
    let c = "7 properties";
    let p = table_one();

    let one = p.with_ue_antennas(1).unwrap();
    let mut gap: f64 = 0.0;
    for t in [0.0, 6.0, 10.0, 14.0, 20.0] {
        let a = coverage_total(&one, db(t), &quad(), AnalysisMode::Correlated).unwrap();
        let b = coverage_total(&one, db(t), &quad(), AnalysisMode::Uncorrelated).unwrap();
        gap = gap.max((a - b).abs());
    }
    r.check(c, gap < 1e-9, format!("N_u=1 correlated vs uncorrelated max gap {gap:.2e} (< 1e-9)"));

    let mut ok = true;
    for n in [1, 4, 8] {
        let pn = p.with_ue_antennas(n).unwrap();
        for mode in [AnalysisMode::Correlated, AnalysisMode::Uncorrelated] {
            let curve: Vec<f64> = (0..=20)
                .step_by(2)
                .map(|t| coverage_total(&pn, db(f64::from(t)), &quad(), mode).unwrap())
                .collect();
            ok &= curve.windows(2).all(|w| w[1] <= w[0] + 1e-12);
        }
    }
    r.check(c, ok, "coverage nonincreasing in tau (N_u 1,4,8; both modes)".into());

    let mut ok = true;
    for mode in [AnalysisMode::Correlated, AnalysisMode::Uncorrelated] {
        let curve: Vec<f64> = (1..=13)
            .map(|n| coverage_total(&p.with_ue_antennas(n).unwrap(), db(10.0), &quad(), mode).unwrap())
            .collect();
        ok &= curve.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    }
    r.check(c, ok, "coverage nondecreasing in N_u 1..13 (both modes)".into());

    let base = quad().without_self_check();
    let fine = base.doubled();
    let mut worst: f64 = 0.0;
    for n in [1, 4, 8] {
        let pn = p.with_ue_antennas(n).unwrap();
        for t in [0.0, 10.0, 20.0] {
            let a = coverage_breakdown(&pn, db(t), &base, AnalysisMode::Correlated).unwrap();
            let b = coverage_breakdown(&pn, db(t), &fine, AnalysisMode::Correlated).unwrap();
            for (x, y) in [(a.direct, b.direct), (a.br, b.br), (a.rd, b.rd)] {
                worst = worst.max((x - y).abs());
            }
        }
    }
    r.check(c, worst < 1e-6, format!("node doubling moves link probabilities by at most {worst:.2e} (< 1e-6)"));

    let mut worst: f64 = 0.0;
    let sum = |d: &GainDistribution<f64>| d.entries().iter().map(|l| l.probability).sum::<f64>();
    for nb in [1, 2, 4, 10, 16, 64] {
        for nu in [1, 2, 4, 8, 32] {
            let q = p.with_bs_antennas(nb).unwrap().with_ue_antennas(nu).unwrap();
            for pmf in [bs_gain_pmf(&q), ue_gain_pmf(&q), joint_gain_pmf(&q)] {
                worst = worst.max((sum(&pmf) - 1.0).abs());
            }
        }
    }
    r.check(c, worst < 1e-12, format!("gain PMF normalization error {worst:.2e} (< 1e-12)"));

    let mut worst: f64 = 0.0;
    for kind in LinkKind::ALL {
        for density in [1e-4, 2e-4, 1e-3, 2e-3] {
            let q = p.with_bs_density(density).unwrap();
            let link = LinkSpec::new(&q, kind);
            let integral = simpson(
                |x| if x > 0.0 { association_distance_pdf(&link, x).unwrap() } else { 0.0 },
                0.0,
                // the support is open at the ball edge
                link.ball_radius * (1.0 - 1e-12),
                20_000,
            );
            worst = worst.max((integral - 1.0).abs());
        }
    }
    r.check(c, worst < 1e-8, format!("association distance PDF normalization error {worst:.2e} (< 1e-8)"));

    let mut ok = true;
    for m in 1..=8 {
        let f = NakagamiFading::<f64>::new(m).unwrap();
        for i in 1..=400 {
            let x = f64::from(i) * 0.02;
            ok &= f.lower_bound_cdf(x) <= f.exact_cdf(x) + 1e-15;
        }
    }
    r.check(c, ok, "bound CDF <= Gamma CDF for m 1..8, x in (0, 8]".into());

    let q = p.with_ue_antennas(4).unwrap();
    let runs: Vec<f64> = [1, 2, 3, 8]
        .iter()
        .map(|&w| {
            estimate_coverage(&q, db(10.0), &SimConfig::new(50_000, SEED).with_workers(w))
                .unwrap()
                .probability
        })
        .collect();
    let same = runs.iter().all(|x| x.to_bits() == runs[0].to_bits());
    r.check(c, same, format!("simulation with 1, 2, 3, 8 workers bit-identical: {runs:?}"));
}

fn main() {
    let mut r = Report {
        failures: Vec::new(),
        checks: 0,
    };
    fig2(&mut r);
    correlation_gap(&mut r);
    table_three(&mut r);
    fig3(&mut r);
    fig4(&mut r);
    oracle(&mut r);
    properties(&mut r);
    println!("{} checks, {} failed", r.checks, r.failures.len());
    if !r.failures.is_empty() {
        let mut names = r.failures.clone();
        names.dedup();
        println!("failing criteria: {}", names.join("; "));
        std::process::exit(1);
    }
}
