use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::Error;

/// How a coverage probability was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed form accounting for the correlation between antennas.
    AnalyticalCorr,
    /// Closed form treating the antennas as independent.
    AnalyticalUncorr,
    /// Monte Carlo with one geometry shared by all antennas.
    SimShared,
    /// Monte Carlo with an independent geometry per antenna.
    SimIndep,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::AnalyticalCorr,
        Method::AnalyticalUncorr,
        Method::SimShared,
        Method::SimIndep,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::AnalyticalCorr => "analytical_corr",
            Method::AnalyticalUncorr => "analytical_uncorr",
            Method::SimShared => "sim_shared",
            Method::SimIndep => "sim_indep",
        }
    }

    pub fn is_simulated(self) -> bool {
        matches!(self, Method::SimShared | Method::SimIndep)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidValue {
                key: "method".into(),
                value: s.into(),
            })
    }
}

/// A coverage probability tagged with its provenance; simulated results
/// carry a binomial confidence interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageResult<T> {
    pub method: Method,
    pub probability: T,
    pub interval: Option<(T, T)>,
}

impl<T> CoverageResult<T> {
    pub fn analytical(method: Method, probability: T) -> Self {
        Self {
            method,
            probability,
            interval: None,
        }
    }
}
