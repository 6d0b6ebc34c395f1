//! Per-branch SINR of a sampled network.

use super::realization::NetworkRealization;
use crate::model::NetworkParams;
use crate::{Real, Result};

/// SINR of the direct link at destination antenna `n`.
pub fn sinr_direct<T: Real>(real: &NetworkRealization<T>, params: &NetworkParams<T>, n: usize) -> Result<T> {
    let (sample, branch) = real.direct_branch(n)?;
    sample.sinr(branch, params.noise_power())
}

/// SINR at the relay's single antenna.
pub fn sinr_br<T: Real>(real: &NetworkRealization<T>, params: &NetworkParams<T>) -> Result<T> {
    real.br.sinr(0, params.noise_power())
}

/// SINR of the relay-to-destination link at destination antenna `n`.
pub fn sinr_rd<T: Real>(real: &NetworkRealization<T>, params: &NetworkParams<T>, n: usize) -> Result<T> {
    let (sample, branch) = real.rd_branch(n)?;
    sample.sinr(branch, params.noise_power())
}
