//! Monte Carlo estimation of the same coverage events.

mod estimate;
mod interval;
pub mod realization;
mod sinr;
mod streams;

pub use estimate::{estimate_coverage, estimate_link_coverage, LinkCoupling, SimConfig};
pub use interval::binomial_interval;
pub use realization::{
    sample_realization, CorrelationMode, FadingModel, Interferer, LinkSample, LinkSampler, NetworkRealization,
    RealizationSampler,
};
pub use sinr::{sinr_br, sinr_direct, sinr_rd};
pub use streams::TrialStreams;
