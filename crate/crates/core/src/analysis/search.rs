//! Design searches built on the closed forms.

use super::coverage::{coverage_total, AnalysisMode};
use super::quadrature::QuadratureConfig;
use crate::model::{NetworkParams, MAX_UE_ANTENNAS};
use crate::{Error, Real, Result};

/// Smallest `N_u` in `1..=cap` whose coverage strictly exceeds `target`.
pub fn min_antennas<T: Real>(
    params: &NetworkParams<T>,
    tau: T,
    target: T,
    mode: AnalysisMode,
    quad: &QuadratureConfig,
    cap: u32,
) -> Result<u32> {
    if !(target > T::zero() && target < T::one()) {
        return Err(Error::ProbabilityOutOfRange("target"));
    }
    let cap = cap.min(MAX_UE_ANTENNAS);
    for n in 1..=cap {
        let p = params.with_ue_antennas(n)?;
        if coverage_total(&p, tau, quad, mode)? > target {
            return Ok(n);
        }
    }
    Err(Error::NotAchievable { cap })
}

/// Grid argmax of correlated coverage over the LoS BS density. Ties go to
/// the smaller density.
pub fn optimal_bs_density<T: Real>(
    params: &NetworkParams<T>,
    tau: T,
    grid: &[T],
    quad: &QuadratureConfig,
) -> Result<(T, T)> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("density grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("density grid must be strictly ascending".into()));
    }
    let mut best: Option<(T, T)> = None;
    for &density in grid {
        let p = params.with_bs_density(density)?;
        let cov = coverage_total(&p, tau, quad, AnalysisMode::Correlated)?;
        if best.is_none_or(|(_, b)| cov > b) {
            best = Some((density, cov));
        }
    }
    Ok(best.expect("grid is nonempty"))
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid<T: Real>(lo: T, hi: T, n: usize) -> Result<Vec<T>> {
    let ordered = hi > lo || (n == 1 && hi == lo);
    if !(lo > T::zero() && ordered) || n == 0 {
        return Err(Error::InvalidArgument(format!("bad log grid [{lo}, {hi}] x {n}")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.log10(), hi.log10());
    let step = (b - a) / T::from_count(n as u64 - 1);
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                T::lit(10.0).powf(a + step * T::from_count(i as u64))
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn quick() -> QuadratureConfig {
        QuadratureConfig {
            outer_nodes: 32,
            inner_nodes: 32,
            abs_tol: 1e-6,
            self_check: false,
        }
    }

    #[test]
    fn low_target_is_met_by_one_antenna() {
        let p = NetworkParams::<f64>::table_one();
        assert_eq!(min_antennas(&p, 10.0, 0.01, AnalysisMode::Correlated, &quick(), 32), Ok(1));
    }

    #[test]
    fn unreachable_target_reports_cap() {
        let p = NetworkParams::<f64>::table_one();
        assert_eq!(
            min_antennas(&p, 10.0, 0.999, AnalysisMode::Correlated, &quick(), 2),
            Err(Error::NotAchievable { cap: 2 })
        );
        assert!(min_antennas(&p, 10.0, 1.5, AnalysisMode::Correlated, &quick(), 2).is_err());
    }

    #[test]
    fn single_point_grid() {
        let p = NetworkParams::<f64>::table_one();
        let (d, cov) = optimal_bs_density(&p, 10.0, &[3e-4], &quick()).unwrap();
        assert_eq!(d, 3e-4);
        assert!(cov > 0.0 && cov < 1.0);
        assert!(optimal_bs_density(&p, 10.0, &[], &quick()).is_err());
        assert!(optimal_bs_density(&p, 10.0, &[2e-4, 1e-4], &quick()).is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-4f64, 1e-2, 40).unwrap();
        assert_eq!(g.len(), 40);
        assert_eq!(g[0], 1e-4);
        assert_eq!(g[39], 1e-2);
        assert_relative_eq!(g[1] / g[0], 10f64.powf(2.0 / 39.0), max_relative = 1e-12);
        assert_eq!(log_grid(3e-4f64, 3e-4, 1).unwrap(), vec![3e-4]);
        assert!(log_grid(3e-4f64, 3e-4, 2).is_err());
    }
}
