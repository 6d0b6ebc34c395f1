//! Coverage analysis for relay-assisted millimeter-wave cellular networks.
//!
//! A typical destination UE with `N_u` antennas and selection combining is
//! served either directly by its nearest line-of-sight BS, or through a
//! decode-and-forward relay UE when the direct link fails. This crate
//! provides:
//!
//! * [`model`]: network parameters, directional-gain PMFs, association
//!   distance laws and Nakagami/Gamma fading helpers;
//! * [`analysis`]: closed-form coverage probabilities, with and without the
//!   spatial correlation between destination antennas, evaluated by
//!   composition enumeration and nested Gauss-Legendre quadrature;
//! * [`simulate`]: a seedable, counter-based Monte Carlo simulator of the
//!   same stochastic-geometry model, used as an independent oracle.
//!
//! All math is generic over [`Real`] (`f32` or `f64`). The `*64` / `*32`
//! aliases below pin the scalar for callers that do not care.

// `!(x > 0)` style checks are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod model;
pub mod scalar;
pub mod simulate;

pub use error::{Error, Result};
pub use scalar::Real;

pub use analysis::{
    coverage_breakdown, coverage_br, coverage_direct_correlated, coverage_rd_correlated,
    coverage_total, min_antennas, optimal_bs_density, AnalysisMode, CoverageBreakdown,
    QuadratureConfig,
};
pub use model::{
    db_to_linear, linear_to_db, CoverageResult, DensityKind, GainDistribution, LinkKind, LinkSpec,
    Method, NakagamiFading, NetworkParams, ParamSpec,
};
pub use simulate::{estimate_coverage, estimate_link_coverage, CorrelationMode, FadingModel, SimConfig};

pub type NetworkParams64 = NetworkParams<f64>;
pub type NetworkParams32 = NetworkParams<f32>;
pub type ParamSpec64 = ParamSpec<f64>;
pub type ParamSpec32 = ParamSpec<f32>;
pub type GainDistribution64 = GainDistribution<f64>;
pub type GainDistribution32 = GainDistribution<f32>;
pub type LinkSpec64 = LinkSpec<f64>;
pub type LinkSpec32 = LinkSpec<f32>;
pub type CoverageResult64 = CoverageResult<f64>;
pub type CoverageResult32 = CoverageResult<f32>;
pub type CoverageBreakdown64 = CoverageBreakdown<f64>;
pub type CoverageBreakdown32 = CoverageBreakdown<f32>;
