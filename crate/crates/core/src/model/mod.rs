//! Domain types shared by the analytical evaluator and the simulator.

mod fading;
mod gain;
mod link;
mod params;
mod result;
mod units;

pub use fading::{nakagami_alpha, sample_gamma_fading, GammaFading, NakagamiFading};
pub use gain::{bs_gain_pmf, joint_gain_pmf, mainlobe_probability, ue_gain_pmf, GainDistribution, GainLevel};
pub use link::{association_distance_pdf, InterfererExclusion, LinkKind, LinkSpec};
pub use params::{
    validate, DensityKind, NetworkParams, ParamSpec, MAX_FADING_SHAPE, MAX_UE_ANTENNAS,
};
pub use result::{CoverageResult, Method};
pub use units::{db_to_linear, linear_to_db};
