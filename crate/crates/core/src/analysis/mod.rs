//! Closed-form coverage probabilities and the searches built on them.

pub mod composition;
mod coverage;
pub mod kernel;
pub mod quadrature;
mod search;

pub use composition::{beta_coefficient, enumerate_compositions, Composition};
pub use coverage::{
    combine, coverage_br, coverage_breakdown, coverage_direct_correlated, coverage_rd_correlated,
    coverage_total, AnalysisMode, CoverageBreakdown,
};
pub use kernel::{br_interference_kernel, v_kernel};
pub use quadrature::{GaussLegendre, QuadratureConfig};
pub use search::{log_grid, min_antennas, optimal_bs_density};
