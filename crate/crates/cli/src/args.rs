//! Command-line surface.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relaycov::{AnalysisMode, FadingModel, Method};

use crate::run::SweepVariable;
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "relaycov", version, about = "Coverage of relay-assisted mmWave networks: closed forms and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coverage at a single threshold.
    Coverage {
        #[arg(long = "tau-db", default_value_t = 10.0, allow_negative_numbers = true)]
        tau_db: f64,
        #[command(flatten)]
        methods: MethodArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Coverage over a grid of one parameter.
    Sweep {
        #[arg(long = "var", value_enum)]
        variable: SweepVariable,
        /// Comma-separated ascending values.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required_unless_present = "range")]
        values: Vec<f64>,
        /// Inclusive `start:stop:step` grid.
        #[arg(long, conflicts_with = "values", allow_hyphen_values = true)]
        range: Option<String>,
        /// Threshold at every point unless the threshold itself is swept.
        #[arg(long = "tau-db", default_value_t = 10.0, allow_negative_numbers = true)]
        tau_db: f64,
        #[command(flatten)]
        methods: MethodArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Smallest destination antenna count meeting each coverage target.
    Nmin {
        #[arg(long = "tau-db", default_value_t = 10.0, allow_negative_numbers = true)]
        tau_db: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.6, 0.7, 0.8, 0.9])]
        targets: Vec<f64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[arg(long, default_value_t = relaycov::model::MAX_UE_ANTENNAS)]
        cap: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Coverage-maximizing LoS BS density for each BS array size.
    Optdensity {
        #[arg(long = "tau-db", default_value_t = 10.0, allow_negative_numbers = true)]
        tau_db: f64,
        #[arg(long = "nb", value_delimiter = ',', default_values_t = [4u32, 8, 16])]
        bs_antennas: Vec<u32>,
        #[arg(long = "grid-lo", default_value_t = 1e-4)]
        grid_lo: f64,
        #[arg(long = "grid-hi", default_value_t = 1e-2)]
        grid_hi: f64,
        #[arg(long = "grid-points", default_value_t = 40)]
        grid_points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Closed forms against simulation, per link and in total.
    Validate {
        #[arg(long = "tau-db", value_delimiter = ',', default_values_t = [6.0, 10.0, 14.0], allow_negative_numbers = true)]
        taus_db: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct MethodArgs {
    /// analytical_corr, analytical_uncorr, sim_shared, sim_indep; comma-separated.
    #[arg(long = "method", value_delimiter = ',', value_parser = Method::from_str, default_values = ["analytical_corr"])]
    pub methods: Vec<Method>,
    /// Also report direct/BR/RD probabilities for analytical methods.
    #[arg(long)]
    pub breakdown: bool,
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML parameter file; keys it omits keep their reference values.
    #[arg(long, value_name = "FILE")]
    pub params: Option<PathBuf>,
    /// Parameter override, applied after the file; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = FadingArg::Gamma)]
    pub fading: FadingArg,
    #[arg(long = "confidence", default_value_t = 0.99)]
    pub confidence_level: f64,
    /// Gauss-Legendre nodes per integration level.
    #[arg(long, default_value_t = 128)]
    pub nodes: usize,
    /// Skip the doubled-node stability check.
    #[arg(long)]
    pub no_self_check: bool,
    /// Output file; a `<FILE>.meta.json` sidecar is written next to it.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FadingArg {
    Gamma,
    /// Desired-signal fading from the bound the closed forms assume.
    LowerBound,
}

impl From<FadingArg> for FadingModel {
    fn from(f: FadingArg) -> Self {
        match f {
            FadingArg::Gamma => FadingModel::Gamma,
            FadingArg::LowerBound => FadingModel::LowerBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Correlated,
    Uncorrelated,
    Both,
}

impl ModeArg {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeArg::Correlated => "correlated",
            ModeArg::Uncorrelated => "uncorrelated",
            ModeArg::Both => "both",
        }
    }

    pub fn modes(self) -> Vec<AnalysisMode> {
        match self {
            ModeArg::Correlated => vec![AnalysisMode::Correlated],
            ModeArg::Uncorrelated => vec![AnalysisMode::Uncorrelated],
            ModeArg::Both => vec![AnalysisMode::Correlated, AnalysisMode::Uncorrelated],
        }
    }
}
