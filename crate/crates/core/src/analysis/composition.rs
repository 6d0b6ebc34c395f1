//! Weak compositions and their inclusion-exclusion weights.
//!
//! Expanding `prod_{n=1}^{kappa} sum_{q=1}^{m} C(m,q) (-1)^(q+1) z_q` groups
//! the `m^kappa` antenna-wise choices by how many antennas picked each `q`;
//! that count vector is a weak composition of `kappa` into `m` parts.

use crate::{Error, Real, Result};

/// Maximum number of compositions a single enumeration may produce.
pub const COMPOSITION_LIMIT: u128 = 1_000_000;

/// Ordered nonnegative parts `(j_1, ..., j_m)` summing to `kappa`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
    kappa: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        let kappa = parts.iter().sum();
        Self { parts, kappa }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts, i.e. the fading shape `m`.
    pub fn m(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// `sum_q q j_q`; lies in `[kappa, m kappa]`.
    pub fn omega(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &j)| (i as u32 + 1) * j)
            .sum()
    }
}

fn binomial(n: u32, k: u32) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// `C(kappa + m - 1, m - 1)`, saturating on overflow.
pub fn composition_count(m: u32, kappa: u32) -> u128 {
    binomial(kappa + m - 1, m - 1).unwrap_or(u128::MAX)
}

/// All weak compositions of `kappa` into `m` parts in lexicographic order.
pub fn enumerate_compositions(m: u32, kappa: u32) -> Result<Vec<Composition>> {
    if m == 0 {
        return Err(Error::NonPositive("m"));
    }
    if kappa == 0 {
        return Err(Error::NonPositive("kappa"));
    }
    let count = composition_count(m, kappa);
    if count > COMPOSITION_LIMIT {
        return Err(Error::CombinatorialBlowup {
            parts: m,
            kappa,
            count,
            limit: COMPOSITION_LIMIT,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut parts = vec![0u32; m as usize];
    fill(&mut parts, 0, kappa, &mut out);
    Ok(out)
}

fn fill(parts: &mut [u32], idx: usize, remaining: u32, out: &mut Vec<Composition>) {
    if idx + 1 == parts.len() {
        parts[idx] = remaining;
        out.push(Composition::new(parts.to_vec()));
        return;
    }
    for j in 0..=remaining {
        parts[idx] = j;
        fill(parts, idx + 1, remaining - j, out);
    }
}

/// Exact integer weight, or `None` if it does not fit in an `i128`.
pub fn exact_beta(comp: &Composition) -> Option<i128> {
    let m = comp.m();
    let mut left = comp.kappa();
    let mut magnitude: u128 = 1;
    for (i, &j) in comp.parts().iter().enumerate() {
        magnitude = magnitude.checked_mul(binomial(left, j)?)?;
        left -= j;
        let c = binomial(m, i as u32 + 1)?;
        magnitude = magnitude.checked_mul(c.checked_pow(j)?)?;
    }
    let magnitude = i128::try_from(magnitude).ok()?;
    Some(if (comp.kappa() + comp.omega()).is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    })
}

/// `kappa!/(j_1!...j_m!) * prod_q C(m,q)^(j_q) * (-1)^(kappa + Omega)`.
pub fn beta_coefficient<T: Real>(comp: &Composition) -> T {
    if let Some(b) = exact_beta(comp) {
        return T::lit(b as f64);
    }
    let m = comp.m();
    let mut left = comp.kappa();
    let mut acc = T::one();
    for (i, &j) in comp.parts().iter().enumerate() {
        acc = acc * binomial_real::<T>(left, j) * binomial_real::<T>(m, i as u32 + 1).powi(j as i32);
        left -= j;
    }
    if (comp.kappa() + comp.omega()).is_multiple_of(2) {
        acc
    } else {
        -acc
    }
}

pub(crate) fn binomial_real<T: Real>(n: u32, k: u32) -> T {
    match binomial(n, k) {
        Some(b) => T::lit(b as f64),
        None => {
            let k = k.min(n - k);
            (0..k).fold(T::one(), |acc, i| {
                acc * T::from_count(u64::from(n - i)) / T::from_count(u64::from(i + 1))
            })
        }
    }
}
