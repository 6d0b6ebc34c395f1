//! Per-interferer Laplace kernels.

use super::composition::Composition;
use crate::model::LinkSpec;
use crate::Real;

/// Expected attenuation contributed by one interferer at distance `ell`
/// to the joint event "all `kappa` antennas covered", averaged over the
/// interferer's gain:
///
/// `sum_g p_g prod_q (1 + q delta P g ell^(-eta) / m)^(-m j_q)`.
pub fn v_kernel<T: Real>(link: &LinkSpec<T>, comp: &Composition, delta: T, ell: T) -> T {
    let m = T::from_count(link.fading_shape.into());
    link.interference_gains
        .entries()
        .iter()
        .map(|level| {
            let s = delta * link.received_power(level.gain, ell) / m;
            let log_prod: T = comp
                .parts()
                .iter()
                .enumerate()
                .filter(|(_, &j)| j > 0)
                .map(|(i, &j)| T::from_count(j.into()) * (T::from_count(i as u64 + 1) * s).ln_1p())
                .sum();
            level.probability * (-m * log_prod).exp()
        })
        .sum()
}

/// BS-to-relay interference kernel: the gain-averaged probability mass
/// `sum_g p_g [1 - (1 + psi x^eta P g / (m ell^eta))^(-m)]`.
pub fn br_interference_kernel<T: Real>(link: &LinkSpec<T>, psi: T, x: T, ell: T) -> T {
    let m = T::from_count(link.fading_shape.into());
    let scale = psi * x.powf(link.pathloss_exp);
    link.interference_gains
        .entries()
        .iter()
        .map(|level| {
            let s = scale * link.received_power(level.gain, ell) / m;
            level.probability * -(-m * s.ln_1p()).exp_m1()
        })
        .sum()
}
