use statrs::distribution::{ContinuousCDF, Normal};

use crate::{Error, Result};

/// Two-sided binomial confidence interval for `successes / trials`.
///
/// Normal approximation widened by the `1/(2n)` continuity correction;
/// falls back to the Wilson score interval when `n p (1 - p) < 25`.
/// Bounds are clipped to `[0, 1]`.
pub fn binomial_interval(successes: u64, trials: u64, level: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::NonPositive("trials"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::ProbabilityOutOfRange("confidence_level"));
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - level) / 2.0);
    let (lo, hi) = if n * p * (1.0 - p) < 25.0 {
        wilson(p, n, z)
    } else {
        let half = z * (p * (1.0 - p) / n).sqrt() + 0.5 / n;
        (p - half, p + half)
    };
    let lo = if successes == 0 { 0.0 } else { lo.max(0.0) };
    let hi = if successes == trials { 1.0 } else { hi.min(1.0) };
    Ok((lo, hi))
}

fn wilson(p: f64, n: f64, z: f64) -> (f64, f64) {
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    (centre - half, centre + half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn normal_branch() {
        let (lo, hi) = binomial_interval(500_000, 1_000_000, 0.99).unwrap();
        let half = 2.5758293035489 * 0.0005 + 0.5e-6;
        assert_relative_eq!(lo, 0.5 - half, max_relative = 1e-9);
        assert_relative_eq!(hi, 0.5 + half, max_relative = 1e-9);
    }

    #[test]
    fn wilson_branch_near_the_edges() {
        let (lo, hi) = binomial_interval(0, 100, 0.95).unwrap();
        assert_eq!(lo, 0.0);
        // Wilson upper bound for 0/100 at 95%: z^2 / (n + z^2)
        let z2 = 1.959963984540054f64.powi(2);
        assert_relative_eq!(hi, z2 / (100.0 + z2), max_relative = 1e-9);
        let (lo, hi) = binomial_interval(1, 1, 0.99).unwrap();
        assert!(lo > 0.0 && hi == 1.0);
    }

    #[test]
    fn width_scales_with_inverse_root_n() {
        let w = |n: u64| {
            let (lo, hi) = binomial_interval(n * 3 / 10, n, 0.99).unwrap();
            hi - lo
        };
        let ratio = w(100_000) / w(1_000_000);
        assert!((ratio - 10f64.sqrt()).abs() < 0.01, "{ratio}");
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(binomial_interval(0, 0, 0.9).is_err());
        assert!(binomial_interval(1, 2, 1.0).is_err());
    }
}
