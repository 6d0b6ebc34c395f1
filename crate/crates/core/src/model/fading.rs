use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::{Error, Real, Result};

/// `alpha = m (m!)^(-1/m)`, the rate in the `(1 - e^(-alpha x))^m` lower
/// bound on the unit-mean Gamma(m, 1/m) CDF.
///
/// The factorial is taken in log space so large `m` cannot overflow.
pub fn nakagami_alpha<T: Real>(m: u32) -> T {
    let ln_factorial: f64 = (2..=m).map(|k| f64::from(k).ln()).sum();
    T::lit(f64::from(m) * (-ln_factorial / f64::from(m)).exp())
}

/// Nakagami-m power fading: `|h|^2 ~ Gamma(m, 1/m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NakagamiFading<T> {
    shape: u32,
    alpha: T,
}

impl<T: Real> NakagamiFading<T> {
    pub fn new(shape: u32) -> Result<Self> {
        if shape == 0 {
            return Err(Error::NonPositive("fading shape"));
        }
        Ok(Self {
            shape,
            alpha: nakagami_alpha(shape),
        })
    }

    pub fn shape(&self) -> u32 {
        self.shape
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `1 - e^(-m x) sum_{w<m} (m x)^w / w!`
    pub fn exact_cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        let mx = T::from_count(self.shape.into()) * x;
        let mut term = T::one();
        let mut series = T::one();
        for w in 1..self.shape {
            term = term * mx / T::from_count(w.into());
            series += term;
        }
        T::one() - (-mx).exp() * series
    }

    /// `(1 - e^(-alpha x))^m`
    pub fn lower_bound_cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        (-(-self.alpha * x).exp_m1()).powi(self.shape as i32)
    }

    /// Draws from the distribution whose CDF is [`Self::lower_bound_cdf`]
    /// (the maximum of `m` i.i.d. exponentials with rate `alpha`).
    pub fn sample_lower_bound<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let u: f64 = rng.random();
        let root = u.powf(1.0 / f64::from(self.shape));
        T::lit(-(-root).ln_1p() / self.alpha.as_f64())
    }
}

/// Reusable Gamma(m, 1/m) sampler.
#[derive(Debug, Clone, Copy)]
pub struct GammaFading {
    dist: Gamma<f64>,
}

impl GammaFading {
    pub fn new(shape: u32) -> Result<Self> {
        if shape == 0 {
            return Err(Error::NonPositive("fading shape"));
        }
        let m = f64::from(shape);
        let dist = Gamma::new(m, 1.0 / m).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(Self { dist })
    }

    #[inline]
    pub fn sample<T: Real, R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        T::lit(self.dist.sample(rng))
    }
}

/// One unit-mean Gamma(m, 1/m) power-fading draw.
pub fn sample_gamma_fading<T: Real, R: Rng + ?Sized>(shape: u32, rng: &mut R) -> Result<T> {
    Ok(GammaFading::new(shape)?.sample(rng))
}
