use serde::Serialize;

use super::NetworkParams;
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GainLevel<T> {
    /// Linear power gain.
    pub gain: T,
    pub probability: T,
}

/// Discrete distribution of directional power gains.
///
/// Entries with identical gain are merged on construction, so the
/// omnidirectional case (`N = 1`) collapses to a point mass at 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainDistribution<T> {
    entries: Vec<GainLevel<T>>,
}

impl<T: Real> GainDistribution<T> {
    pub fn new(levels: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        let mut entries: Vec<GainLevel<T>> = Vec::new();
        for (gain, probability) in levels {
            if !(gain.is_finite() && gain > T::zero()) {
                return Err(Error::NonPositive("gain"));
            }
            if !(probability >= T::zero() && probability <= T::one()) {
                return Err(Error::ProbabilityOutOfRange("gain probability"));
            }
            match entries.iter_mut().find(|e| e.gain == gain) {
                Some(e) => e.probability += probability,
                None => entries.push(GainLevel { gain, probability }),
            }
        }
        let total: T = entries.iter().map(|e| e.probability).sum();
        if (total - T::one()).abs() > Self::tolerance() {
            return Err(Error::InvalidArgument(format!(
                "gain probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { entries })
    }

    pub(crate) fn tolerance() -> T {
        T::lit(1e-12).max(T::epsilon() * T::lit(16.0))
    }

    pub fn entries(&self) -> &[GainLevel<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mean(&self) -> T {
        self.entries.iter().map(|e| e.gain * e.probability).sum()
    }

    /// Inverse-CDF lookup for a uniform draw `u` in `[0, 1)`.
    pub fn quantile(&self, u: T) -> T {
        let mut acc = T::zero();
        for e in &self.entries {
            acc += e.probability;
            if u < acc {
                return e.gain;
            }
        }
        self.entries[self.entries.len() - 1].gain
    }
}

/// Probability that a uniformly oriented `n`-element array points its main
/// lobe at the receiver: beamwidth `102 pi / (180 n)` over `2 pi`.
pub fn mainlobe_probability<T: Real>(antennas: u32) -> T {
    let beamwidth = T::lit(102.0) * T::PI() / (T::lit(180.0) * T::from_count(antennas.into()));
    beamwidth / (T::lit(2.0) * T::PI())
}

fn sectored<T: Real>(antennas: u32) -> [(T, T); 2] {
    let n = T::from_count(antennas.into());
    let p = mainlobe_probability::<T>(antennas);
    [(n, p), (n.recip(), T::one() - p)]
}

/// Gain of an interfering BS towards the receiver (main lobe `N_b`, side lobe `1/N_b`).
pub fn bs_gain_pmf<T: Real>(params: &NetworkParams<T>) -> GainDistribution<T> {
    GainDistribution::new(sectored(params.bs_antennas())).expect("sectored PMF is valid")
}

/// Gain of an interfering relay/uplink UE (main lobe `N_u`, side lobe `1/N_u`).
pub fn ue_gain_pmf<T: Real>(params: &NetworkParams<T>) -> GainDistribution<T> {
    GainDistribution::new(sectored(params.ue_antennas())).expect("sectored PMF is valid")
}

/// Product gain of an interfering BS and the relay's receive pattern.
pub fn joint_gain_pmf<T: Real>(params: &NetworkParams<T>) -> GainDistribution<T> {
    let bs = sectored::<T>(params.bs_antennas());
    let ue = sectored::<T>(params.ue_antennas());
    let levels = bs
        .iter()
        .flat_map(|&(gb, pb)| ue.iter().map(move |&(gu, pu)| (gb * gu, pb * pu)));
    GainDistribution::new(levels).expect("product of valid PMFs is valid")
}
