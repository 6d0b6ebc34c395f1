//! Front end for `relaycov`: parameter resolution, sweeps, design searches
//! and simulation cross-checks, written as CSV or JSON.

pub mod args;
pub mod error;
pub mod run;
pub mod table;

use std::path::{Path, PathBuf};
use std::time::Instant;

use relaycov::analysis::QuadratureConfig;
use relaycov::{ParamSpec64, SimConfig};
use serde::Serialize;
use serde_json::{json, Value};

use args::{Cli, Command, Common, MethodArgs};
pub use error::{CliError, CliResult};
use run::{Context, DensityGrid, SweepSpec, SweepVariable};
use table::{write_atomic, Table};

/// Builds the parameter set: reference values, then the file, then each
/// `--set` in order.
pub fn resolve_params(file: Option<&Path>, overrides: &[String]) -> CliResult<ParamSpec64> {
    let mut spec = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("params: cannot read {}: {e}", path.display())))?;
            ParamSpec64::from_toml_str(&text).map_err(|e| CliError::Config(format!("params: {e}")))?
        }
        None => ParamSpec64::table_one(),
    };
    for item in overrides {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set expects KEY=VALUE, got `{item}`")))?;
        spec.set(key.trim(), value)?;
    }
    spec.validate()?;
    Ok(spec)
}

fn context(common: &Common) -> CliResult<Context> {
    let params = resolve_params(common.params.as_deref(), &common.set)?;
    let quadrature = QuadratureConfig {
        outer_nodes: common.nodes,
        inner_nodes: common.nodes,
        self_check: !common.no_self_check,
        ..QuadratureConfig::default()
    };
    quadrature.validate()?;
    let sim = SimConfig {
        trials: common.trials,
        seed: common.seed,
        fading: common.fading.into(),
        confidence_level: common.confidence_level,
        ..SimConfig::default()
    };
    sim.validate()?;
    if common.workers == Some(0) {
        return Err(CliError::Config("workers: must be positive".into()));
    }
    Ok(Context {
        params,
        quadrature,
        sim,
    })
}

/// Parses `start:stop:step` into an inclusive ascending grid.
pub fn parse_range(text: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::Config(format!("range: expected start:stop:step, got `{text}`"));
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<CliResult<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(step > 0.0 && stop >= start && start.is_finite() && stop.is_finite()) {
        return Err(bad());
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if n > 100_000 {
        return Err(CliError::Config(format!("range: {n} points is too many")));
    }
    // rounding to 12 significant digits keeps 0.1-style steps readable
    Ok((0..n)
        .map(|i| {
            let v = start + i as f64 * step;
            format!("{v:.12e}").parse().expect("formatted float parses")
        })
        .collect())
}

#[derive(Serialize)]
struct Meta<'a> {
    command: &'a str,
    version: &'a str,
    params: &'a ParamSpec64,
    quadrature: &'a QuadratureConfig,
    simulation: &'a SimConfig,
    settings: Value,
    workers: Option<usize>,
    runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    row_runtime_ms: Option<Vec<f64>>,
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    out.with_file_name(name)
}

struct Outcome {
    table: Table,
    settings: Value,
    row_runtime_ms: Option<Vec<f64>>,
}

fn sweep(ctx: &Context, spec: SweepSpec) -> CliResult<Outcome> {
    let rows = run::run_sweep(ctx, &spec)?;
    Ok(Outcome {
        table: run::sweep_table(&spec, &rows),
        row_runtime_ms: Some(rows.iter().map(|r| r.runtime_ms).collect()),
        settings: serde_json::to_value(&spec).expect("sweep spec serializes"),
    })
}

fn sweep_spec(variable: SweepVariable, values: Vec<f64>, tau_db: f64, m: &MethodArgs) -> SweepSpec {
    SweepSpec {
        variable,
        values,
        methods: m.methods.clone(),
        tau_db,
        breakdown: m.breakdown,
    }
}

fn execute(command: &Command, ctx: &Context) -> CliResult<Outcome> {
    match command {
        Command::Coverage { tau_db, methods, .. } => {
            sweep(ctx, sweep_spec(SweepVariable::TauDb, vec![*tau_db], *tau_db, methods))
        }
        Command::Sweep {
            variable,
            values,
            range,
            tau_db,
            methods,
            ..
        } => {
            let values = match range {
                Some(r) => parse_range(r)?,
                None => values.clone(),
            };
            sweep(ctx, sweep_spec(*variable, values, *tau_db, methods))
        }
        Command::Nmin {
            tau_db,
            targets,
            mode,
            cap,
            ..
        } => Ok(Outcome {
            table: run::run_nmin(ctx, *tau_db, targets, &mode.modes(), *cap)?,
            settings: json!({ "tau_db": tau_db, "targets": targets, "mode": mode.as_str(), "cap": cap }),
            row_runtime_ms: None,
        }),
        Command::Optdensity {
            tau_db,
            bs_antennas,
            grid_lo,
            grid_hi,
            grid_points,
            ..
        } => {
            let grid = DensityGrid {
                lo: *grid_lo,
                hi: *grid_hi,
                points: *grid_points,
            };
            Ok(Outcome {
                table: run::run_optimal_density(ctx, *tau_db, bs_antennas, grid)?,
                settings: json!({ "tau_db": tau_db, "bs_antennas": bs_antennas, "grid": grid }),
                row_runtime_ms: None,
            })
        }
        Command::Validate { taus_db, .. } => Ok(Outcome {
            table: run::run_validate(ctx, taus_db)?,
            settings: json!({ "tau_db": taus_db }),
            row_runtime_ms: None,
        }),
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Coverage { common, .. }
            | Command::Sweep { common, .. }
            | Command::Nmin { common, .. }
            | Command::Optdensity { common, .. }
            | Command::Validate { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Coverage { .. } => "coverage",
            Command::Sweep { .. } => "sweep",
            Command::Nmin { .. } => "nmin",
            Command::Optdensity { .. } => "optdensity",
            Command::Validate { .. } => "validate",
        }
    }
}

/// Runs a parsed command line, writing the result to `--out` (plus its
/// sidecar) or to stdout.
pub fn run(cli: &Cli) -> CliResult<()> {
    let start = Instant::now();
    let common = cli.command.common();
    let ctx = context(common)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("workers: {e}")))?;
    let outcome = pool.install(|| execute(&cli.command, &ctx))?;
    let bytes = outcome.table.encode(common.format)?;
    let Some(path) = &common.out else {
        use std::io::Write;
        std::io::stdout().write_all(&bytes)?;
        return Ok(());
    };
    write_atomic(path, &bytes)?;
    let meta = Meta {
        command: cli.command.name(),
        version: env!("CARGO_PKG_VERSION"),
        params: &ctx.params,
        quadrature: &ctx.quadrature,
        simulation: &ctx.sim,
        settings: outcome.settings,
        workers: common.workers,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        row_runtime_ms: outcome.row_runtime_ms,
    };
    let mut text = serde_json::to_vec_pretty(&meta).map_err(|e| CliError::Io(e.to_string()))?;
    text.push(b'\n');
    write_atomic(&sidecar_path(path), &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0:20:2").unwrap().len(), 11);
        assert_eq!(parse_range("0.1:0.3:0.1").unwrap(), vec![0.1, 0.2, 0.3]);
        assert_eq!(parse_range("-4:4:4").unwrap(), vec![-4.0, 0.0, 4.0]);
        assert!(parse_range("1:0:1").is_err());
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:1:0").is_err());
    }

    #[test]
    fn overrides_apply_in_order() {
        let p = resolve_params(None, &["ue_antennas=8".into(), "ue_antennas=2".into()]).unwrap();
        assert_eq!(p.ue_antennas, 2.0);
        assert!(matches!(resolve_params(None, &["bogus=1".into()]), Err(CliError::Config(_))));
        assert!(matches!(resolve_params(None, &["ue_antennas".into()]), Err(CliError::Config(_))));
        assert!(matches!(resolve_params(None, &["bs_los_prob=1.5".into()]), Err(CliError::Config(_))));
    }

    #[test]
    fn sidecar_sits_next_to_output() {
        assert_eq!(sidecar_path(Path::new("out/fig2.csv")), Path::new("out/fig2.csv.meta.json"));
    }
}
