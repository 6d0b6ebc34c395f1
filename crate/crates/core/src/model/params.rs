use serde::{Deserialize, Serialize};

use super::units::db_to_linear;
use crate::{Error, Real, Result};

/// Largest Nakagami shape accepted for any link.
pub const MAX_FADING_SHAPE: u32 = 8;
/// Largest destination/relay UE array size accepted.
pub const MAX_UE_ANTENNAS: u32 = 32;

/// How the densities in a [`ParamSpec`] are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityKind {
    /// Densities are the line-of-sight (already thinned) densities.
    #[default]
    Effective,
    /// Densities are the raw PPP densities before LoS thinning.
    Raw,
}

/// User-facing parameter set, in the units people write them in.
///
/// Powers are in dBm, integer-valued quantities are still reals so that a
/// config file saying `m_bd = 2.5` is reported instead of silently
/// truncated. [`ParamSpec::validate`] turns this into [`NetworkParams`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamSpec<T> {
    pub bs_density: T,
    pub relay_density: T,
    pub dest_density: Option<T>,
    pub density_kind: DensityKind,
    pub bs_los_prob: T,
    pub ue_los_prob: T,
    pub bs_los_radius: T,
    pub ue_los_radius: T,
    pub bs_power_dbm: T,
    pub ue_power_dbm: T,
    pub noise_power_dbm: T,
    pub bs_antennas: T,
    pub ue_antennas: T,
    pub pathloss_exp: T,
    pub m_bd: T,
    pub m_br: T,
    pub m_rd: T,
    pub multiplexing_factor: T,
}

impl<T: Real> Default for ParamSpec<T> {
    fn default() -> Self {
        Self::table_one()
    }
}

impl<T: Real> ParamSpec<T> {
    /// The reference deployment: 35/25/0 dBm, N_b = 10, N_u = 4, eta = 2.4,
    /// m = 2 on every link, LoS balls of 100 m and 20 m.
    pub fn table_one() -> Self {
        Self {
            bs_density: T::lit(2e-4),
            relay_density: T::lit(2e-3),
            dest_density: None,
            density_kind: DensityKind::Effective,
            bs_los_prob: T::lit(0.9),
            ue_los_prob: T::lit(0.63),
            bs_los_radius: T::lit(100.0),
            ue_los_radius: T::lit(20.0),
            bs_power_dbm: T::lit(35.0),
            ue_power_dbm: T::lit(25.0),
            noise_power_dbm: T::lit(0.0),
            bs_antennas: T::lit(10.0),
            ue_antennas: T::lit(4.0),
            pathloss_exp: T::lit(2.4),
            m_bd: T::lit(2.0),
            m_br: T::lit(2.0),
            m_rd: T::lit(2.0),
            multiplexing_factor: T::lit(0.9),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self>
    where
        T: for<'de> Deserialize<'de>,
    {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Applies a single `key=value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::InvalidValue {
            key: key.to_owned(),
            value: value.to_owned(),
        };
        if key == "density_kind" {
            self.density_kind = match value.trim() {
                "effective" => DensityKind::Effective,
                "raw" => DensityKind::Raw,
                _ => return Err(bad()),
            };
            return Ok(());
        }
        let x: f64 = value.trim().parse().map_err(|_| bad())?;
        if !x.is_finite() {
            return Err(bad());
        }
        let x = T::lit(x);
        let slot = match key {
            "bs_density" => &mut self.bs_density,
            "relay_density" => &mut self.relay_density,
            "dest_density" => {
                self.dest_density = Some(x);
                return Ok(());
            }
            "bs_los_prob" => &mut self.bs_los_prob,
            "ue_los_prob" => &mut self.ue_los_prob,
            "bs_los_radius" => &mut self.bs_los_radius,
            "ue_los_radius" => &mut self.ue_los_radius,
            "bs_power_dbm" => &mut self.bs_power_dbm,
            "ue_power_dbm" => &mut self.ue_power_dbm,
            "noise_power_dbm" => &mut self.noise_power_dbm,
            "bs_antennas" => &mut self.bs_antennas,
            "ue_antennas" => &mut self.ue_antennas,
            "pathloss_exp" => &mut self.pathloss_exp,
            "m_bd" => &mut self.m_bd,
            "m_br" => &mut self.m_br,
            "m_rd" => &mut self.m_rd,
            "multiplexing_factor" => &mut self.multiplexing_factor,
            other => return Err(Error::UnknownKey(other.to_owned())),
        };
        *slot = x;
        Ok(())
    }

    /// Sets the LoS BS density regardless of how densities are read.
    pub fn set_effective_bs_density(&mut self, density: T) {
        self.bs_density = match self.density_kind {
            DensityKind::Effective => density,
            DensityKind::Raw => density / self.bs_los_prob,
        };
    }

    pub fn validate(&self) -> Result<NetworkParams<T>> {
        validate(self)
    }
}

/// Validated, linear-unit parameter set. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkParams<T> {
    raw_bs_density: T,
    raw_relay_density: T,
    raw_dest_density: Option<T>,
    bs_los_prob: T,
    ue_los_prob: T,
    bs_los_radius: T,
    ue_los_radius: T,
    bs_power: T,
    ue_power: T,
    noise_power: T,
    bs_antennas: u32,
    ue_antennas: u32,
    pathloss_exp: T,
    m_bd: u32,
    m_br: u32,
    m_rd: u32,
    multiplexing_factor: T,
}

fn positive<T: Real>(x: T, field: &'static str) -> Result<T> {
    if x.is_finite() && x > T::zero() {
        Ok(x)
    } else {
        Err(Error::NonPositive(field))
    }
}

fn probability<T: Real>(x: T, field: &'static str) -> Result<T> {
    if x.is_finite() && x >= T::zero() && x <= T::one() {
        Ok(x)
    } else {
        Err(Error::ProbabilityOutOfRange(field))
    }
}

fn finite<T: Real>(x: T, field: &'static str) -> Result<T> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidValue {
            key: field.to_owned(),
            value: x.to_string(),
        })
    }
}

fn positive_integer<T: Real>(x: T, field: &'static str, cap: u32) -> Result<u32> {
    if !x.is_finite() {
        return Err(Error::NonIntegerShape(field));
    }
    if x < T::one() {
        return Err(if x.fract() == T::zero() {
            Error::NonPositive(field)
        } else {
            Error::NonIntegerShape(field)
        });
    }
    if x.fract() != T::zero() {
        return Err(Error::NonIntegerShape(field));
    }
    let n = x.as_f64();
    if n > f64::from(cap) {
        return Err(Error::AboveCap {
            field,
            value: n as u64,
            max: u64::from(cap),
        });
    }
    Ok(n as u32)
}

/// Checks every field, converts dBm to mW and resolves densities to raw
/// (pre-thinning) values.
pub fn validate<T: Real>(spec: &ParamSpec<T>) -> Result<NetworkParams<T>> {
    let bs_los_prob = probability(spec.bs_los_prob, "bs_los_prob")?;
    let ue_los_prob = probability(spec.ue_los_prob, "ue_los_prob")?;
    // An empty LoS process would make the association law undefined.
    positive(bs_los_prob, "bs_los_prob")?;
    positive(ue_los_prob, "ue_los_prob")?;

    let bs_density = positive(spec.bs_density, "bs_density")?;
    let relay_density = positive(spec.relay_density, "relay_density")?;
    let raw_dest_density = spec
        .dest_density
        .map(|d| positive(d, "dest_density"))
        .transpose()?;
    let (raw_bs_density, raw_relay_density) = match spec.density_kind {
        DensityKind::Effective => (bs_density / bs_los_prob, relay_density / ue_los_prob),
        DensityKind::Raw => (bs_density, relay_density),
    };

    let pathloss_exp = finite(spec.pathloss_exp, "pathloss_exp")?;
    if pathloss_exp < T::lit(2.0) {
        return Err(Error::PathLossExponent(pathloss_exp.as_f64()));
    }
    let multiplexing_factor = finite(spec.multiplexing_factor, "multiplexing_factor")?;
    if multiplexing_factor < T::zero() {
        return Err(Error::InvalidValue {
            key: "multiplexing_factor".into(),
            value: multiplexing_factor.to_string(),
        });
    }

    let params = NetworkParams {
        raw_bs_density,
        raw_relay_density,
        raw_dest_density,
        bs_los_prob,
        ue_los_prob,
        bs_los_radius: positive(spec.bs_los_radius, "bs_los_radius")?,
        ue_los_radius: positive(spec.ue_los_radius, "ue_los_radius")?,
        bs_power: positive(db_to_linear(finite(spec.bs_power_dbm, "bs_power_dbm")?), "bs_power_dbm")?,
        ue_power: positive(db_to_linear(finite(spec.ue_power_dbm, "ue_power_dbm")?), "ue_power_dbm")?,
        noise_power: positive(
            db_to_linear(finite(spec.noise_power_dbm, "noise_power_dbm")?),
            "noise_power_dbm",
        )?,
        bs_antennas: positive_integer(spec.bs_antennas, "bs_antennas", u32::MAX)?,
        ue_antennas: positive_integer(spec.ue_antennas, "ue_antennas", MAX_UE_ANTENNAS)?,
        pathloss_exp,
        m_bd: positive_integer(spec.m_bd, "m_bd", MAX_FADING_SHAPE)?,
        m_br: positive_integer(spec.m_br, "m_br", MAX_FADING_SHAPE)?,
        m_rd: positive_integer(spec.m_rd, "m_rd", MAX_FADING_SHAPE)?,
        multiplexing_factor,
    };
    Ok(params)
}

impl<T: Real> NetworkParams<T> {
    /// Reference parameter set; see [`ParamSpec::table_one`].
    pub fn table_one() -> Self {
        ParamSpec::table_one()
            .validate()
            .expect("reference parameters are valid")
    }

    /// LoS BS density, `bs_los_prob * raw_bs_density`.
    pub fn bs_density(&self) -> T {
        self.bs_los_prob * self.raw_bs_density
    }

    /// LoS relay density, `ue_los_prob * raw_relay_density`.
    pub fn relay_density(&self) -> T {
        self.ue_los_prob * self.raw_relay_density
    }

    /// Density of co-channel interfering UEs seen on the RD link,
    /// `ue_los_prob * multiplexing_factor * raw_bs_density`.
    pub fn interferer_density(&self) -> T {
        self.ue_los_prob * self.multiplexing_factor * self.raw_bs_density
    }

    pub fn raw_bs_density(&self) -> T {
        self.raw_bs_density
    }
    pub fn raw_relay_density(&self) -> T {
        self.raw_relay_density
    }
    /// Destination-UE density. Carried for completeness; no coverage
    /// formula depends on it.
    pub fn raw_dest_density(&self) -> Option<T> {
        self.raw_dest_density
    }
    pub fn bs_los_prob(&self) -> T {
        self.bs_los_prob
    }
    pub fn ue_los_prob(&self) -> T {
        self.ue_los_prob
    }
    pub fn bs_los_radius(&self) -> T {
        self.bs_los_radius
    }
    pub fn ue_los_radius(&self) -> T {
        self.ue_los_radius
    }
    /// BS transmit power, mW.
    pub fn bs_power(&self) -> T {
        self.bs_power
    }
    /// Relay / uplink UE transmit power, mW.
    pub fn ue_power(&self) -> T {
        self.ue_power
    }
    /// Noise power, mW.
    pub fn noise_power(&self) -> T {
        self.noise_power
    }
    pub fn bs_antennas(&self) -> u32 {
        self.bs_antennas
    }
    pub fn ue_antennas(&self) -> u32 {
        self.ue_antennas
    }
    pub fn pathloss_exp(&self) -> T {
        self.pathloss_exp
    }
    pub fn m_bd(&self) -> u32 {
        self.m_bd
    }
    pub fn m_br(&self) -> u32 {
        self.m_br
    }
    pub fn m_rd(&self) -> u32 {
        self.m_rd
    }
    pub fn multiplexing_factor(&self) -> T {
        self.multiplexing_factor
    }

    pub fn with_ue_antennas(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositive("ue_antennas"));
        }
        if n > MAX_UE_ANTENNAS {
            return Err(Error::AboveCap {
                field: "ue_antennas",
                value: u64::from(n),
                max: u64::from(MAX_UE_ANTENNAS),
            });
        }
        Ok(Self {
            ue_antennas: n,
            ..self.clone()
        })
    }

    pub fn with_bs_antennas(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositive("bs_antennas"));
        }
        Ok(Self {
            bs_antennas: n,
            ..self.clone()
        })
    }

    /// Replaces the LoS BS density; the raw density (and with it the
    /// interfering-UE density) follows.
    pub fn with_bs_density(&self, density: T) -> Result<Self> {
        let density = positive(density, "bs_density")?;
        Ok(Self {
            raw_bs_density: density / self.bs_los_prob,
            ..self.clone()
        })
    }

    /// Replaces the BS transmit power (mW).
    pub fn with_bs_power(&self, power: T) -> Result<Self> {
        Ok(Self {
            bs_power: positive(power, "bs_power")?,
            ..self.clone()
        })
    }

    /// Replaces the noise power (mW).
    pub fn with_noise_power(&self, power: T) -> Result<Self> {
        Ok(Self {
            noise_power: positive(power, "noise_power")?,
            ..self.clone()
        })
    }

    /// Replaces the multiplexing factor; zero removes RD interference.
    pub fn with_multiplexing_factor(&self, rho: T) -> Result<Self> {
        if !(rho.is_finite() && rho >= T::zero()) {
            return Err(Error::InvalidValue {
                key: "multiplexing_factor".into(),
                value: rho.to_string(),
            });
        }
        Ok(Self {
            multiplexing_factor: rho,
            ..self.clone()
        })
    }
}
