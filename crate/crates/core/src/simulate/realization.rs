//! Sampling one snapshot of the network around the typical destination.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;

use crate::model::{GammaFading, InterfererExclusion, LinkKind, LinkSpec, NakagamiFading, NetworkParams};
use super::streams::TrialStreams;
use crate::{Error, Real, Result};

/// How the destination's antennas relate to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationMode {
    /// One geometry and one set of interferer gains per link, seen by all
    /// antennas; only small-scale fading differs per antenna.
    #[default]
    Shared,
    /// Every antenna sees its own, independent network realization, and the
    /// RD hop is that of a single-antenna network. This is the counterfactual
    /// the uncorrelated closed form describes.
    IndependentPerAntenna,
}

/// Law of the desired-signal power fading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FadingModel {
    /// Unit-mean Gamma(m, 1/m) on every path.
    #[default]
    Gamma,
    /// Desired-signal power drawn from the `(1 - e^(-alpha x))^m` law the
    /// closed forms substitute for the Gamma CDF; interferers stay Gamma.
    /// Under this model the closed forms are exact, which isolates
    /// implementation error from approximation error.
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interferer<T> {
    pub distance: T,
    pub gain: T,
    /// Mean received power `P g d^-eta`.
    pub power: T,
}

/// One link's geometry, gains and fading for `antennas` receive branches.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkSample<T> {
    pub kind: LinkKind,
    /// `None` when the associated process has no point in the ball.
    pub assoc_distance: Option<T>,
    /// Mean received desired power `P G x^-eta`; zero when empty.
    pub desired_power: T,
    pub interferers: Vec<Interferer<T>>,
    pub antennas: usize,
    /// One draw per antenna.
    pub desired_fading: Vec<T>,
    /// Antenna-major: entry `n * interferers.len() + k`.
    pub interferer_fading: Vec<T>,
}

impl<T: Real> LinkSample<T> {
    pub fn is_empty(&self) -> bool {
        self.assoc_distance.is_none()
    }

    /// SINR at branch `antenna`, or `EmptyProcess` with no associated node.
    pub fn sinr(&self, antenna: usize, noise_power: T) -> Result<T> {
        if self.is_empty() {
            return Err(Error::EmptyProcess);
        }
        if antenna >= self.antennas {
            return Err(Error::InvalidArgument(format!(
                "antenna {antenna} out of range (0..{})",
                self.antennas
            )));
        }
        Ok(self.sinr_unchecked(antenna, noise_power))
    }

    #[inline]
    pub(crate) fn sinr_unchecked(&self, antenna: usize, noise_power: T) -> T {
        let k = self.interferers.len();
        let fading = &self.interferer_fading[antenna * k..(antenna + 1) * k];
        let interference: T = self
            .interferers
            .iter()
            .zip(fading)
            .map(|(i, &h)| i.power * h)
            .sum();
        self.desired_power * self.desired_fading[antenna] / (interference + noise_power)
    }

    /// Selection combining: does any branch exceed `tau`?
    pub fn covered(&self, tau: T, noise_power: T) -> bool {
        !self.is_empty() && (0..self.antennas).any(|n| self.sinr_unchecked(n, noise_power) > tau)
    }
}

/// Samples links of one kind.
#[derive(Debug, Clone)]
pub struct LinkSampler<T> {
    link: LinkSpec<T>,
    assoc_count: Option<Poisson<f64>>,
    interferer_count: Option<Poisson<f64>>,
    gamma: GammaFading,
    bound: NakagamiFading<T>,
    fading: FadingModel,
}

fn poisson(mean: f64) -> Result<Option<Poisson<f64>>> {
    if mean <= 0.0 {
        return Ok(None);
    }
    Poisson::new(mean)
        .map(Some)
        .map_err(|e| Error::InvalidArgument(format!("Poisson mean {mean}: {e}")))
}

impl<T: Real> LinkSampler<T> {
    pub fn new(link: LinkSpec<T>, fading: FadingModel) -> Result<Self> {
        let assoc_count = poisson(link.mean_assoc_count().as_f64())?;
        let interferer_count = match link.interferer_exclusion {
            InterfererExclusion::BeyondAssociated => None,
            InterfererExclusion::WholeBall => poisson(link.mean_interferer_count().as_f64())?,
        };
        Ok(Self {
            gamma: GammaFading::new(link.fading_shape)?,
            bound: NakagamiFading::new(link.fading_shape)?,
            link,
            assoc_count,
            interferer_count,
            fading,
        })
    }

    pub fn link(&self) -> &LinkSpec<T> {
        &self.link
    }

    fn count<R: Rng + ?Sized>(dist: &Option<Poisson<f64>>, rng: &mut R) -> usize {
        dist.as_ref().map_or(0, |d| d.sample(rng) as usize)
    }

    /// Uniform point in the ball, as a distance: `R sqrt(U)` with `U` in (0, 1].
    fn radius<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let u = 1.0 - rng.random::<f64>();
        self.link.ball_radius * T::lit(u.sqrt())
    }

    pub fn sample<R: Rng + ?Sized>(&self, antennas: usize, rng: &mut R) -> LinkSample<T> {
        let link = &self.link;
        let n_assoc = Self::count(&self.assoc_count, rng);
        if n_assoc == 0 {
            return LinkSample {
                kind: link.kind,
                assoc_distance: None,
                desired_power: T::zero(),
                interferers: Vec::new(),
                antennas,
                desired_fading: Vec::new(),
                interferer_fading: Vec::new(),
            };
        }
        let mut distances: Vec<T> = (0..n_assoc).map(|_| self.radius(rng)).collect();
        let nearest = (0..n_assoc)
            .min_by(|&a, &b| distances[a].partial_cmp(&distances[b]).expect("finite distance"))
            .expect("nonempty");
        let assoc = distances.swap_remove(nearest);
        if link.interferer_exclusion == InterfererExclusion::WholeBall {
            let n_int = Self::count(&self.interferer_count, rng);
            distances = (0..n_int).map(|_| self.radius(rng)).collect();
        }
        let interferers: Vec<Interferer<T>> = distances
            .into_iter()
            .map(|distance| {
                let gain = link.interference_gains.quantile(T::lit(rng.random::<f64>()));
                Interferer {
                    distance,
                    gain,
                    power: link.received_power(gain, distance),
                }
            })
            .collect();
        // antenna-major, so branch n sees the same draws whatever the branch count
        let k = interferers.len();
        let mut desired_fading = Vec::with_capacity(antennas);
        let mut interferer_fading = Vec::with_capacity(antennas * k);
        for _ in 0..antennas {
            desired_fading.push(match self.fading {
                FadingModel::Gamma => self.gamma.sample(rng),
                FadingModel::LowerBound => self.bound.sample_lower_bound(rng),
            });
            interferer_fading.extend((0..k).map(|_| self.gamma.sample::<T, _>(rng)));
        }
        LinkSample {
            kind: link.kind,
            assoc_distance: Some(assoc),
            desired_power: link.received_power(link.desired_gain, assoc),
            interferers,
            antennas,
            desired_fading,
            interferer_fading,
        }
    }
}

/// One sampled network: the three hops, drawn independently.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkRealization<T> {
    pub correlation: CorrelationMode,
    /// A single `N_u`-branch sample (shared) or `N_u` one-branch samples.
    pub direct: Vec<LinkSample<T>>,
    pub br: LinkSample<T>,
    pub rd: Vec<LinkSample<T>>,
}

impl<T: Real> NetworkRealization<T> {
    /// Locates antenna `n` among the samples of a combining link.
    fn branch(samples: &[LinkSample<T>], n: usize) -> Result<(&LinkSample<T>, usize)> {
        let mut n = n;
        for s in samples {
            if n < s.antennas {
                return Ok((s, n));
            }
            n -= s.antennas;
        }
        Err(Error::InvalidArgument(format!("antenna index {n} out of range")))
    }

    pub fn direct_branch(&self, n: usize) -> Result<(&LinkSample<T>, usize)> {
        Self::branch(&self.direct, n)
    }

    pub fn rd_branch(&self, n: usize) -> Result<(&LinkSample<T>, usize)> {
        Self::branch(&self.rd, n)
    }
}

/// Draws full network realizations.
#[derive(Debug, Clone)]
pub struct RealizationSampler<T> {
    correlation: CorrelationMode,
    antennas: usize,
    direct: LinkSampler<T>,
    br: LinkSampler<T>,
    rd: LinkSampler<T>,
    noise_power: T,
}

impl<T: Real> RealizationSampler<T> {
    pub fn new(params: &NetworkParams<T>, correlation: CorrelationMode, fading: FadingModel) -> Result<Self> {
        let rd_params = match correlation {
            CorrelationMode::Shared => params.clone(),
            CorrelationMode::IndependentPerAntenna => params.with_ue_antennas(1)?,
        };
        Ok(Self {
            correlation,
            antennas: params.ue_antennas() as usize,
            direct: LinkSampler::new(LinkSpec::new(params, LinkKind::Direct), fading)?,
            br: LinkSampler::new(LinkSpec::new(params, LinkKind::BaseToRelay), fading)?,
            rd: LinkSampler::new(LinkSpec::new(&rd_params, LinkKind::RelayToDestination), fading)?,
            noise_power: params.noise_power(),
        })
    }

    pub fn noise_power(&self) -> T {
        self.noise_power
    }

    pub fn sample_link<R: Rng + ?Sized>(&self, kind: LinkKind, rng: &mut R) -> Vec<LinkSample<T>> {
        let sampler = match kind {
            LinkKind::Direct => &self.direct,
            LinkKind::BaseToRelay => return vec![self.br.sample(1, rng)],
            LinkKind::RelayToDestination => &self.rd,
        };
        match self.correlation {
            CorrelationMode::Shared => vec![sampler.sample(self.antennas, rng)],
            CorrelationMode::IndependentPerAntenna => {
                (0..self.antennas).map(|_| sampler.sample(1, rng)).collect()
            }
        }
    }

    /// Draws all three hops from one generator, in order.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> NetworkRealization<T> {
        let direct = self.sample_link(LinkKind::Direct, rng);
        let br = self.br.sample(1, rng);
        let rd = self.sample_link(LinkKind::RelayToDestination, rng);
        NetworkRealization {
            correlation: self.correlation,
            direct,
            br,
            rd,
        }
    }

    /// Realization of trial `index`, each hop from its own substream.
    pub fn sample_trial(&self, streams: &TrialStreams, index: u64) -> NetworkRealization<T> {
        NetworkRealization {
            correlation: self.correlation,
            direct: self.sample_link(LinkKind::Direct, &mut streams.substream(index, link_part(LinkKind::Direct))),
            br: self.br.sample(1, &mut streams.substream(index, link_part(LinkKind::BaseToRelay))),
            rd: self.sample_link(
                LinkKind::RelayToDestination,
                &mut streams.substream(index, link_part(LinkKind::RelayToDestination)),
            ),
        }
    }

    pub(crate) fn covered(&self, samples: &[LinkSample<T>], tau: T) -> bool {
        samples.iter().any(|s| s.covered(tau, self.noise_power))
    }

    /// Decode-and-forward success for trial `index`.
    pub(crate) fn trial(&self, tau: T, streams: &TrialStreams, index: u64) -> bool {
        let real = self.sample_trial(streams, index);
        self.covered(&real.direct, tau)
            || (real.br.covered(tau, self.noise_power) && self.covered(&real.rd, tau))
    }

    pub(crate) fn link_trial(&self, kind: LinkKind, tau: T, streams: &TrialStreams, index: u64) -> bool {
        let samples = self.sample_link(kind, &mut streams.substream(index, link_part(kind)));
        self.covered(&samples, tau)
    }
}

fn link_part(kind: LinkKind) -> u8 {
    match kind {
        LinkKind::Direct => 0,
        LinkKind::BaseToRelay => 1,
        LinkKind::RelayToDestination => 2,
    }
}

/// One realization with Gamma fading.
pub fn sample_realization<T: Real, R: Rng + ?Sized>(
    params: &NetworkParams<T>,
    correlation: CorrelationMode,
    rng: &mut R,
) -> Result<NetworkRealization<T>> {
    Ok(RealizationSampler::new(params, correlation, FadingModel::Gamma)?.sample(rng))
}
