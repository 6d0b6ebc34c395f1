//! The commands behind the CLI, usable without it.

use std::time::Instant;

use rayon::prelude::*;
use relaycov::analysis::{log_grid, QuadratureConfig};
use relaycov::simulate::CorrelationMode;
use relaycov::{
    coverage_breakdown, db_to_linear, estimate_coverage, estimate_link_coverage, min_antennas, optimal_bs_density,
    AnalysisMode, CoverageBreakdown64, CoverageResult64, Error, LinkKind, Method, NetworkParams64, ParamSpec64,
    SimConfig,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

/// Resolved settings shared by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Context {
    pub params: ParamSpec64,
    pub quadrature: QuadratureConfig,
    pub sim: SimConfig,
}

impl Context {
    pub fn new(params: ParamSpec64) -> Self {
        Self {
            params,
            quadrature: QuadratureConfig::default(),
            sim: SimConfig::default(),
        }
    }

    pub fn network(&self) -> CliResult<NetworkParams64> {
        Ok(self.params.validate()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum SweepVariable {
    TauDb,
    BsPowerDbm,
    /// Line-of-sight BS density per m^2.
    BsDensity,
    UeAntennas,
    BsAntennas,
}

impl SweepVariable {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariable::TauDb => "tau_db",
            SweepVariable::BsPowerDbm => "bs_power_dbm",
            SweepVariable::BsDensity => "bs_density",
            SweepVariable::UeAntennas => "ue_antennas",
            SweepVariable::BsAntennas => "bs_antennas",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    pub methods: Vec<Method>,
    /// Threshold for every point unless `tau_db` is the swept variable.
    pub tau_db: f64,
    /// Adds per-link columns for the analytical methods.
    pub breakdown: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        if self.values.is_empty() {
            return Err(CliError::Config("values: no sweep values given".into()));
        }
        if let Some(bad) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(CliError::Config(format!("values: {bad} is not finite")));
        }
        if self.values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Config("values: must be strictly ascending".into()));
        }
        if self.methods.is_empty() {
            return Err(CliError::Config("methods: at least one method is required".into()));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return Err(CliError::Config(format!("methods: {m} listed twice")));
            }
        }
        if !self.tau_db.is_finite() {
            return Err(CliError::Config("tau_db: must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodResult {
    pub result: CoverageResult64,
    pub breakdown: Option<CoverageBreakdown64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub value: f64,
    pub results: Vec<MethodResult>,
    pub runtime_ms: f64,
}

fn point_label(variable: SweepVariable, value: f64, tau_db: f64) -> String {
    match variable {
        SweepVariable::TauDb => format!("tau_db={value}"),
        v => format!("{}={value} (tau_db={tau_db})", v.as_str()),
    }
}

/// Parameters and linear threshold at one sweep point.
fn point(ctx: &Context, spec: &SweepSpec, value: f64) -> CliResult<(NetworkParams64, f64)> {
    let mut p = ctx.params.clone();
    let mut tau_db = spec.tau_db;
    match spec.variable {
        SweepVariable::TauDb => tau_db = value,
        SweepVariable::BsPowerDbm => p.bs_power_dbm = value,
        SweepVariable::BsDensity => p.set_effective_bs_density(value),
        SweepVariable::UeAntennas => p.ue_antennas = value,
        SweepVariable::BsAntennas => p.bs_antennas = value,
    }
    let label = point_label(spec.variable, value, spec.tau_db);
    let params = p.validate().map_err(|e| CliError::at(&label, e))?;
    Ok((params, db_to_linear(tau_db)))
}

/// One method at one parameter point.
pub fn evaluate(
    ctx: &Context,
    params: &NetworkParams64,
    tau: f64,
    method: Method,
) -> relaycov::Result<MethodResult> {
    let analytic = |mode| -> relaycov::Result<MethodResult> {
        let b = coverage_breakdown(params, tau, &ctx.quadrature, mode)?;
        Ok(MethodResult {
            result: CoverageResult64::analytical(method, b.total),
            breakdown: Some(b),
        })
    };
    let simulated = |mode| -> relaycov::Result<MethodResult> {
        let sim = ctx.sim.clone().with_correlation(mode);
        Ok(MethodResult {
            result: estimate_coverage(params, tau, &sim)?,
            breakdown: None,
        })
    };
    match method {
        Method::AnalyticalCorr => analytic(AnalysisMode::Correlated),
        Method::AnalyticalUncorr => analytic(AnalysisMode::Uncorrelated),
        Method::SimShared => simulated(CorrelationMode::Shared),
        Method::SimIndep => simulated(CorrelationMode::IndependentPerAntenna),
    }
}

/// Evaluates every method at every value. Points run in parallel on the
/// current rayon pool; rows come back in value order.
pub fn run_sweep(ctx: &Context, spec: &SweepSpec) -> CliResult<Vec<ResultRow>> {
    spec.validate()?;
    let outcomes: Vec<CliResult<ResultRow>> = spec
        .values
        .par_iter()
        .map(|&value| {
            let start = Instant::now();
            let (params, tau) = point(ctx, spec, value)?;
            let results = spec
                .methods
                .iter()
                .map(|&m| evaluate(ctx, &params, tau, m))
                .collect::<relaycov::Result<Vec<_>>>()
                .map_err(|e| CliError::at(point_label(spec.variable, value, spec.tau_db), e))?;
            Ok(ResultRow {
                value,
                results,
                runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect();
    outcomes.into_iter().collect()
}

/// Wide layout: the swept value, then one probability column per method,
/// `_ci_low`/`_ci_high` for simulated methods and, with `breakdown`,
/// `_direct`/`_br`/`_rd` for analytical ones.
pub fn sweep_table(spec: &SweepSpec, rows: &[ResultRow]) -> Table {
    let mut columns = vec![spec.variable.as_str().to_owned()];
    for m in &spec.methods {
        columns.push(m.as_str().to_owned());
        if m.is_simulated() {
            columns.push(format!("{m}_ci_low"));
            columns.push(format!("{m}_ci_high"));
        } else if spec.breakdown {
            for link in ["direct", "br", "rd"] {
                columns.push(format!("{m}_{link}"));
            }
        }
    }
    let mut table = Table::new(columns);
    for row in rows {
        let mut cells = vec![Cell::Float(row.value)];
        for (m, r) in spec.methods.iter().zip(&row.results) {
            cells.push(r.result.probability.into());
            if m.is_simulated() {
                let (lo, hi) = r.result.interval.expect("simulated results carry an interval");
                cells.push(lo.into());
                cells.push(hi.into());
            } else if spec.breakdown {
                let b = r.breakdown.expect("analytical results carry a breakdown");
                cells.extend([b.direct.into(), b.br.into(), b.rd.into()]);
            }
        }
        table.push(cells);
    }
    table
}

fn mode_name(mode: AnalysisMode) -> &'static str {
    match mode {
        AnalysisMode::Correlated => "correlated",
        AnalysisMode::Uncorrelated => "uncorrelated",
    }
}

/// Smallest antenna count reaching each coverage target.
pub fn run_nmin(ctx: &Context, tau_db: f64, targets: &[f64], modes: &[AnalysisMode], cap: u32) -> CliResult<Table> {
    if targets.is_empty() {
        return Err(CliError::Config("targets: none given".into()));
    }
    let base = ctx.network()?;
    let tau = db_to_linear(tau_db);
    let mut table = Table::new(["target", "mode", "n_min", "achievable"]);
    for &mode in modes {
        for &target in targets {
            let label = format!("target={target} mode={} (tau_db={tau_db})", mode_name(mode));
            let n = match min_antennas(&base, tau, target, mode, &ctx.quadrature, cap) {
                Ok(n) => Some(n),
                Err(Error::NotAchievable { .. }) => None,
                Err(e) => return Err(CliError::at(label, e)),
            };
            table.push(vec![
                target.into(),
                mode_name(mode).into(),
                n.map_or(Cell::Empty, Cell::from),
                n.is_some().into(),
            ]);
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for DensityGrid {
    fn default() -> Self {
        Self {
            lo: 1e-4,
            hi: 1e-2,
            points: 40,
        }
    }
}

/// Coverage-maximizing LoS BS density for each BS array size.
pub fn run_optimal_density(ctx: &Context, tau_db: f64, bs_antennas: &[u32], grid: DensityGrid) -> CliResult<Table> {
    if bs_antennas.is_empty() {
        return Err(CliError::Config("nb: no BS antenna counts given".into()));
    }
    let densities = log_grid(grid.lo, grid.hi, grid.points).map_err(|e| CliError::Config(format!("grid: {e}")))?;
    let base = ctx.network()?;
    let tau = db_to_linear(tau_db);
    let outcomes: Vec<CliResult<Vec<Cell>>> = bs_antennas
        .par_iter()
        .map(|&nb| {
            let label = format!("bs_antennas={nb} (tau_db={tau_db})");
            let params = base.with_bs_antennas(nb).map_err(|e| CliError::at(&label, e))?;
            let (density, coverage) =
                optimal_bs_density(&params, tau, &densities, &ctx.quadrature).map_err(|e| CliError::at(&label, e))?;
            Ok(vec![nb.into(), density.into(), coverage.into()])
        })
        .collect();
    let mut table = Table::new(["bs_antennas", "optimal_bs_density", "coverage"]);
    for row in outcomes {
        table.push(row?);
    }
    Ok(table)
}

/// Closed forms against simulation at matched modes, one row per
/// (threshold, quantity).
pub fn run_validate(ctx: &Context, taus_db: &[f64]) -> CliResult<Table> {
    if taus_db.is_empty() {
        return Err(CliError::Config("tau_db: no thresholds given".into()));
    }
    let params = ctx.network()?;
    let shared = ctx.sim.clone().with_correlation(CorrelationMode::Shared);
    let indep = ctx.sim.clone().with_correlation(CorrelationMode::IndependentPerAntenna);
    let mut table = Table::new([
        "tau_db",
        "quantity",
        "analysis",
        "simulation",
        "ci_low",
        "ci_high",
        "inside_ci",
    ]);
    for &tau_db in taus_db {
        let tau = db_to_linear(tau_db);
        let wrap = |e| CliError::at(format!("tau_db={tau_db}"), e);
        let corr = coverage_breakdown(&params, tau, &ctx.quadrature, AnalysisMode::Correlated).map_err(wrap)?;
        let unc = coverage_breakdown(&params, tau, &ctx.quadrature, AnalysisMode::Uncorrelated).map_err(wrap)?;
        let cases = [
            ("direct", corr.direct, estimate_link_coverage(&params, tau, LinkKind::Direct, &shared)),
            ("br", corr.br, estimate_link_coverage(&params, tau, LinkKind::BaseToRelay, &shared)),
            ("rd", corr.rd, estimate_link_coverage(&params, tau, LinkKind::RelayToDestination, &shared)),
            ("total_correlated", corr.total, estimate_coverage(&params, tau, &shared)),
            ("total_uncorrelated", unc.total, estimate_coverage(&params, tau, &indep)),
        ];
        for (name, analysis, sim) in cases {
            let sim = sim.map_err(wrap)?;
            let (lo, hi) = sim.interval.expect("simulated results carry an interval");
            table.push(vec![
                tau_db.into(),
                name.into(),
                analysis.into(),
                sim.probability.into(),
                lo.into(),
                hi.into(),
                (lo <= analysis && analysis <= hi).into(),
            ]);
        }
    }
    Ok(table)
}
