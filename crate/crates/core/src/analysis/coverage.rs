//! Closed-form coverage probabilities.
//!
//! Direct and RD links use selection combining over `N_u` antennas. The
//! union over antennas is expanded by inclusion-exclusion; the joint event
//! "these `kappa` antennas are all covered" is expanded again over weak
//! compositions of `kappa`, and each composition term is a nested integral
//! over the associated distance `x` and the interferer distance `ell`.

use serde::Serialize;

use super::composition::{beta_coefficient, binomial_real, enumerate_compositions};
use super::kernel::br_interference_kernel;
use super::quadrature::{GaussLegendre, QuadratureConfig};
use crate::model::{nakagami_alpha, InterfererExclusion, LinkKind, LinkSpec, NetworkParams};
use crate::scalar::CompensatedSum;
use crate::{Error, Real, Result};

/// Raw results may stray this far outside `[0, 1]` before being treated
/// as numerically broken.
const RANGE_SLACK: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisMode {
    /// Antennas share interferer positions, gains and association distance.
    Correlated,
    /// Antennas are treated as independent single-antenna receivers.
    Uncorrelated,
}

/// Per-link coverage probabilities and their decode-and-forward combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageBreakdown<T> {
    pub mode: AnalysisMode,
    pub direct: T,
    pub br: T,
    pub rd: T,
    pub total: T,
}

/// `1 - (1 - P_direct)(1 - P_br P_rd)`: covered directly, or through a
/// relay whose two hops both succeed.
pub fn combine<T: Real>(direct: T, br: T, rd: T) -> T {
    T::one() - (T::one() - direct) * (T::one() - br * rd)
}

fn check_tau<T: Real>(tau: T) -> Result<()> {
    if tau.is_finite() && tau > T::zero() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "SINR threshold must be positive and finite (got {tau})"
        )))
    }
}

/// Runs `eval` at the configured node counts and, when requested, again at
/// doubled counts; a change of `abs_tol` or more is reported as instability.
fn self_checked<T: Real>(
    quad: &QuadratureConfig,
    what: &str,
    eval: impl Fn(&QuadratureConfig) -> Result<T>,
) -> Result<T> {
    quad.validate()?;
    let base = eval(quad)?;
    if quad.self_check {
        let fine = eval(&quad.doubled())?;
        let change = (fine - base).abs().as_f64();
        if !(change < quad.abs_tol) {
            return Err(Error::NumericalInstability(format!(
                "{what}: doubling quadrature nodes moved the result by {change:.3e} (tolerance {:.1e})",
                quad.abs_tol
            )));
        }
    }
    Ok(base)
}

fn finish<T: Real>(what: &str, raw: T, magnitude: T, abs_tol: f64) -> Result<T> {
    let roundoff = (magnitude * T::epsilon()).as_f64();
    if !raw.is_finite() || roundoff > abs_tol {
        return Err(Error::NumericalInstability(format!(
            "{what}: alternating series too ill-conditioned (term mass {:.3e})",
            magnitude.as_f64()
        )));
    }
    let slack = T::lit(RANGE_SLACK);
    if raw < -slack || raw > T::one() + slack {
        return Err(Error::NumericalInstability(format!(
            "{what}: raw probability {raw} outside [0, 1]"
        )));
    }
    Ok(raw.max(T::zero()).min(T::one()))
}

/// Values that depend only on the outer node `x`.
struct OuterPoint<T> {
    /// Outer weight times association density.
    weight: T,
    /// `alpha tau x^eta / (P G)`.
    delta: T,
    /// Inner weights times `ell`.
    inner_weights: Vec<T>,
    /// `ln(1 + q delta P g ell^-eta / m)`, laid out `[ell][gain][q]`.
    log_base: Vec<T>,
}

/// Coverage of a selection-combining link with `antennas` receive branches
/// that share geometry and interferer gains.
fn selection_link<T: Real>(
    link: &LinkSpec<T>,
    antennas: u32,
    tau: T,
    quad: &QuadratureConfig,
) -> Result<T> {
    let what = link.kind.as_str();
    let m = link.fading_shape;
    let m_real = T::from_count(m.into());
    let alpha = nakagami_alpha::<T>(m);
    let radius = link.ball_radius;
    let outer_rule = GaussLegendre::<T>::new(quad.outer_nodes);
    let inner_rule = GaussLegendre::<T>::new(quad.inner_nodes);
    let gains = link.interference_gains.entries();
    let n_gain = gains.len();
    let m_usize = m as usize;

    let points: Vec<OuterPoint<T>> = outer_rule
        .mapped(T::zero(), radius)
        .map(|(x, w)| {
            let delta = alpha * tau * x.powf(link.pathloss_exp) / (link.tx_power * link.desired_gain);
            let lower = match link.interferer_exclusion {
                InterfererExclusion::BeyondAssociated => x,
                InterfererExclusion::WholeBall => T::zero(),
            };
            let mut inner_weights = Vec::with_capacity(quad.inner_nodes);
            let mut log_base = Vec::with_capacity(quad.inner_nodes * n_gain * m_usize);
            for (ell, w_ell) in inner_rule.mapped(lower, radius) {
                inner_weights.push(w_ell * ell);
                for level in gains {
                    let s = delta * link.received_power(level.gain, ell) / m_real;
                    for q in 1..=m {
                        log_base.push((T::from_count(q.into()) * s).ln_1p());
                    }
                }
            }
            OuterPoint {
                weight: w * link.assoc_pdf_unchecked(x),
                delta,
                inner_weights,
                log_base,
            }
        })
        .collect();

    let two_pi_lambda = T::lit(2.0) * T::PI() * link.interferer_density;
    let mut series = CompensatedSum::new();
    for kappa in 1..=antennas {
        let outer_sign = if kappa % 2 == 1 { T::one() } else { -T::one() };
        let choose = binomial_real::<T>(antennas, kappa);
        for comp in enumerate_compositions(m, kappa)? {
            let beta = beta_coefficient::<T>(&comp);
            let omega = T::from_count(comp.omega().into());
            let active: Vec<(usize, T)> = comp
                .parts()
                .iter()
                .enumerate()
                .filter(|(_, &j)| j > 0)
                .map(|(q, &j)| (q, T::from_count(j.into())))
                .collect();
            let mut integral = T::zero();
            for pt in &points {
                let mut interference = T::zero();
                for (k, &w_ell) in pt.inner_weights.iter().enumerate() {
                    let mut one_minus_v = T::zero();
                    for (g, level) in gains.iter().enumerate() {
                        let base = &pt.log_base[(k * n_gain + g) * m_usize..][..m_usize];
                        let log_prod: T = active.iter().map(|&(q, j)| j * base[q]).sum();
                        one_minus_v += level.probability * -(-m_real * log_prod).exp_m1();
                    }
                    interference += w_ell * one_minus_v;
                }
                let noise = pt.delta * omega * link.noise_power;
                integral += pt.weight * (-noise - two_pi_lambda * interference).exp();
            }
            series.add(outer_sign * choose * beta * integral);
        }
    }
    let xi = link.nonempty_probability();
    finish(what, xi * series.value(), xi * series.magnitude(), quad.abs_tol)
}

fn br_link<T: Real>(link: &LinkSpec<T>, tau: T, quad: &QuadratureConfig) -> Result<T> {
    let m = link.fading_shape;
    let alpha = nakagami_alpha::<T>(m);
    let radius = link.ball_radius;
    let outer_rule = GaussLegendre::<T>::new(quad.outer_nodes);
    let inner_rule = GaussLegendre::<T>::new(quad.inner_nodes);
    let two_pi_lambda = T::lit(2.0) * T::PI() * link.interferer_density;

    let mut series = CompensatedSum::new();
    for j in 1..=m {
        let sign = if j % 2 == 1 { T::one() } else { -T::one() };
        let psi = T::from_count(j.into()) * alpha * tau / (link.tx_power * link.desired_gain);
        let integral = outer_rule.integrate(T::zero(), radius, |x| {
            let interference = inner_rule.integrate(x, radius, |ell| {
                ell * br_interference_kernel(link, psi, x, ell)
            });
            let noise = psi * x.powf(link.pathloss_exp) * link.noise_power;
            (-noise - two_pi_lambda * interference).exp() * link.assoc_pdf_unchecked(x)
        });
        series.add(sign * binomial_real::<T>(m, j) * integral);
    }
    let xi = link.nonempty_probability();
    finish("br", xi * series.value(), xi * series.magnitude(), quad.abs_tol)
}

/// Direct-link coverage with selection combining over the destination's
/// `N_u` correlated antennas.
pub fn coverage_direct_correlated<T: Real>(
    params: &NetworkParams<T>,
    tau: T,
    quad: &QuadratureConfig,
) -> Result<T> {
    check_tau(tau)?;
    let link = LinkSpec::new(params, LinkKind::Direct);
    self_checked(quad, "direct", |q| selection_link(&link, params.ue_antennas(), tau, q))
}

/// Coverage of the BS-to-relay hop (single beamformed branch).
pub fn coverage_br<T: Real>(params: &NetworkParams<T>, tau: T, quad: &QuadratureConfig) -> Result<T> {
    check_tau(tau)?;
    let link = LinkSpec::new(params, LinkKind::BaseToRelay);
    self_checked(quad, "br", |q| br_link(&link, tau, q))
}

/// Relay-to-destination coverage with selection combining. Interfering UEs
/// may be closer than the associated relay.
pub fn coverage_rd_correlated<T: Real>(
    params: &NetworkParams<T>,
    tau: T,
    quad: &QuadratureConfig,
) -> Result<T> {
    check_tau(tau)?;
    let link = LinkSpec::new(params, LinkKind::RelayToDestination);
    self_checked(quad, "rd", |q| selection_link(&link, params.ue_antennas(), tau, q))
}

/// `1 - (1 - p)^n`
fn independent_union<T: Real>(single: T, antennas: u32) -> T {
    T::one() - (T::one() - single).powi(antennas as i32)
}

pub fn coverage_breakdown<T: Real>(
    params: &NetworkParams<T>,
    tau: T,
    quad: &QuadratureConfig,
    mode: AnalysisMode,
) -> Result<CoverageBreakdown<T>> {
    check_tau(tau)?;
    let br = coverage_br(params, tau, quad)?;
    let (direct, rd) = match mode {
        AnalysisMode::Correlated => (
            coverage_direct_correlated(params, tau, quad)?,
            coverage_rd_correlated(params, tau, quad)?,
        ),
        AnalysisMode::Uncorrelated => {
            // Single-antenna marginals come from the one-antenna network.
            let single = params.with_ue_antennas(1)?;
            let n = params.ue_antennas();
            (
                independent_union(coverage_direct_correlated(&single, tau, quad)?, n),
                independent_union(coverage_rd_correlated(&single, tau, quad)?, n),
            )
        }
    };
    let total = combine(direct, br, rd);
    debug_assert!(total + T::epsilon() * T::lit(4.0) >= direct);
    Ok(CoverageBreakdown {
        mode,
        direct,
        br,
        rd,
        total,
    })
}

/// Overall coverage: direct mode, or relay mode when the direct link fails.
pub fn coverage_total<T: Real>(
    params: &NetworkParams<T>,
    tau: T,
    quad: &QuadratureConfig,
    mode: AnalysisMode,
) -> Result<T> {
    Ok(coverage_breakdown(params, tau, quad, mode)?.total)
}
