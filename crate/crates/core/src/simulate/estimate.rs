use rayon::prelude::*;
use serde::Serialize;

use super::interval::binomial_interval;
use super::realization::{CorrelationMode, FadingModel, RealizationSampler};
use super::streams::TrialStreams;
use crate::model::{CoverageResult, LinkKind, Method, NetworkParams};
use crate::{Error, Real, Result};

/// Trials per parallel work item. Fixed so the partition of trials into
/// streams never depends on the worker count.
const BATCH: u64 = 2048;

/// How the three hops of one trial are coupled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkCoupling {
    /// Direct, BR and RD geometries are drawn independently of each other.
    #[default]
    IndependentLinks,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub correlation_mode: CorrelationMode,
    pub link_coupling: LinkCoupling,
    pub fading: FadingModel,
    pub confidence_level: f64,
    /// `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            trials: 1_000_000,
            seed: 0,
            correlation_mode: CorrelationMode::Shared,
            link_coupling: LinkCoupling::IndependentLinks,
            fading: FadingModel::Gamma,
            confidence_level: 0.99,
            workers: None,
        }
    }
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            ..Self::default()
        }
    }

    pub fn with_correlation(mut self, mode: CorrelationMode) -> Self {
        self.correlation_mode = mode;
        self
    }

    pub fn with_fading(mut self, fading: FadingModel) -> Self {
        self.fading = fading;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::NonPositive("trials"));
        }
        if !(self.confidence_level > 0.0 && self.confidence_level < 1.0) {
            return Err(Error::ProbabilityOutOfRange("confidence_level"));
        }
        if self.workers == Some(0) {
            return Err(Error::NonPositive("workers"));
        }
        Ok(())
    }

    pub fn method(&self) -> Method {
        match self.correlation_mode {
            CorrelationMode::Shared => Method::SimShared,
            CorrelationMode::IndependentPerAntenna => Method::SimIndep,
        }
    }
}

fn count_successes<F>(sim: &SimConfig, trial: F) -> Result<u64>
where
    F: Fn(&TrialStreams, u64) -> bool + Sync,
{
    let streams = TrialStreams::new(sim.seed);
    let batches = sim.trials.div_ceil(BATCH);
    let run = || {
        (0..batches)
            .into_par_iter()
            .map(|b| {
                let end = ((b + 1) * BATCH).min(sim.trials);
                (b * BATCH..end)
                    .filter(|&t| trial(&streams, t))
                    .count() as u64
            })
            .sum()
    };
    match sim.workers {
        None => Ok(run()),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map(|pool| pool.install(run))
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}"))),
    }
}

fn finish<T: Real>(sim: &SimConfig, successes: u64) -> Result<CoverageResult<T>> {
    let (lo, hi) = binomial_interval(successes, sim.trials, sim.confidence_level)?;
    Ok(CoverageResult {
        method: sim.method(),
        probability: T::lit(successes as f64 / sim.trials as f64),
        interval: Some((T::lit(lo), T::lit(hi))),
    })
}

/// Fraction of trials in which the destination is covered, either directly
/// or through the decode-and-forward relay.
pub fn estimate_coverage<T: Real>(params: &NetworkParams<T>, tau: T, sim: &SimConfig) -> Result<CoverageResult<T>> {
    sim.validate()?;
    let sampler = RealizationSampler::new(params, sim.correlation_mode, sim.fading)?;
    let successes = count_successes(sim, |streams, t| sampler.trial(tau, streams, t))?;
    finish(sim, successes)
}

/// Coverage of one hop in isolation, for checking the per-link closed forms.
pub fn estimate_link_coverage<T: Real>(
    params: &NetworkParams<T>,
    tau: T,
    kind: LinkKind,
    sim: &SimConfig,
) -> Result<CoverageResult<T>> {
    sim.validate()?;
    let sampler = RealizationSampler::new(params, sim.correlation_mode, sim.fading)?;
    let successes = count_successes(sim, |streams, t| sampler.link_trial(kind, tau, streams, t))?;
    finish(sim, successes)
}
