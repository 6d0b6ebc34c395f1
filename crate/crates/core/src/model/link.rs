use serde::Serialize;

use super::gain::{bs_gain_pmf, joint_gain_pmf, ue_gain_pmf, GainDistribution};
use super::NetworkParams;
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkKind {
    /// Associated BS to destination UE.
    Direct,
    /// Associated BS to relay UE.
    BaseToRelay,
    /// Relay UE to destination UE.
    RelayToDestination,
}

impl LinkKind {
    pub const ALL: [LinkKind; 3] = [
        LinkKind::Direct,
        LinkKind::BaseToRelay,
        LinkKind::RelayToDestination,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LinkKind::Direct => "direct",
            LinkKind::BaseToRelay => "br",
            LinkKind::RelayToDestination => "rd",
        }
    }
}

/// Where interferers may sit relative to the associated transmitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InterfererExclusion {
    /// Interferers belong to the same PPP as the associated node, so none
    /// is closer than it.
    BeyondAssociated,
    /// Interferers form a separate PPP anywhere in the LoS ball.
    WholeBall,
}

/// Everything about one hop that the evaluator and simulator need.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkSpec<T> {
    pub kind: LinkKind,
    /// Density of the process the receiver associates with.
    pub assoc_density: T,
    pub interferer_density: T,
    pub ball_radius: T,
    pub fading_shape: u32,
    pub desired_gain: T,
    pub interference_gains: GainDistribution<T>,
    pub tx_power: T,
    pub noise_power: T,
    pub pathloss_exp: T,
    pub interferer_exclusion: InterfererExclusion,
}

impl<T: Real> LinkSpec<T> {
    pub fn new(params: &NetworkParams<T>, kind: LinkKind) -> Self {
        let nb = T::from_count(params.bs_antennas().into());
        let nu = T::from_count(params.ue_antennas().into());
        let common = |assoc_density,
                      interferer_density,
                      ball_radius,
                      fading_shape,
                      desired_gain,
                      interference_gains,
                      tx_power,
                      interferer_exclusion| LinkSpec {
            kind,
            assoc_density,
            interferer_density,
            ball_radius,
            fading_shape,
            desired_gain,
            interference_gains,
            tx_power,
            noise_power: params.noise_power(),
            pathloss_exp: params.pathloss_exp(),
            interferer_exclusion,
        };
        match kind {
            LinkKind::Direct => common(
                params.bs_density(),
                params.bs_density(),
                params.bs_los_radius(),
                params.m_bd(),
                nb,
                bs_gain_pmf(params),
                params.bs_power(),
                InterfererExclusion::BeyondAssociated,
            ),
            LinkKind::BaseToRelay => common(
                params.bs_density(),
                params.bs_density(),
                params.bs_los_radius(),
                params.m_br(),
                nb * nu,
                joint_gain_pmf(params),
                params.bs_power(),
                InterfererExclusion::BeyondAssociated,
            ),
            LinkKind::RelayToDestination => common(
                params.relay_density(),
                params.interferer_density(),
                params.ue_los_radius(),
                params.m_rd(),
                nu,
                ue_gain_pmf(params),
                params.ue_power(),
                InterfererExclusion::WholeBall,
            ),
        }
    }

    /// Probability the associated process has at least one point in the
    /// ball: `1 - exp(-pi lambda r^2)`.
    pub fn nonempty_probability(&self) -> T {
        -(-T::PI() * self.assoc_density * self.ball_radius * self.ball_radius).exp_m1()
    }

    /// Mean number of points of the associated process in the ball.
    pub fn mean_assoc_count(&self) -> T {
        T::PI() * self.assoc_density * self.ball_radius * self.ball_radius
    }

    /// Mean number of interferers that [`InterfererExclusion::WholeBall`]
    /// links sample independently of association.
    pub fn mean_interferer_count(&self) -> T {
        T::PI() * self.interferer_density * self.ball_radius * self.ball_radius
    }

    /// Nearest-point distance density conditioned on a nonempty ball.
    /// Caller guarantees `0 < x < ball_radius`.
    pub(crate) fn assoc_pdf_unchecked(&self, x: T) -> T {
        let two_pi_lambda = T::lit(2.0) * T::PI() * self.assoc_density;
        two_pi_lambda * x * (-T::PI() * self.assoc_density * x * x).exp() / self.nonempty_probability()
    }

    /// Conditional CDF of the nearest-point distance.
    pub fn assoc_cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        if x >= self.ball_radius {
            return T::one();
        }
        -(-T::PI() * self.assoc_density * x * x).exp_m1() / self.nonempty_probability()
    }

    /// Received power (before fading) from a transmitter at distance `d`
    /// with antenna gain `gain`.
    #[inline]
    pub fn received_power(&self, gain: T, d: T) -> T {
        self.tx_power * gain * d.powf(-self.pathloss_exp)
    }
}

/// Density of the distance to the associated transmitter, given one exists.
pub fn association_distance_pdf<T: Real>(link: &LinkSpec<T>, x: T) -> Result<T> {
    if !(x > T::zero() && x < link.ball_radius) {
        return Err(Error::OutOfSupport {
            x: x.as_f64(),
            radius: link.ball_radius.as_f64(),
        });
    }
    Ok(link.assoc_pdf_unchecked(x))
}
