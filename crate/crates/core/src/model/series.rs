use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Daily training-load impulses `w(0..N)`, one value per day.
///
/// Every closed form in this crate assumes the athlete starts from rest, so
/// the load on day 0 must be exactly zero. Construction rejects anything
/// else instead of silently patching it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LoadSeries {
    values: Vec<f64>,
}

impl LoadSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (day, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidLoad(format!("load on day {day} is not finite")));
            }
            if v < 0.0 {
                return Err(Error::InvalidLoad(format!("load on day {day} is negative ({v})")));
            }
        }
        if let Some(&first) = values.first() {
            if first != 0.0 {
                return Err(Error::InvalidLoad(format!(
                    "load on day 0 must be 0 (w(0) = 0), got {first}"
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn zeros(len: usize) -> Self {
        Self { values: vec![0.0; len] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every load up to `horizon` is zero.
    pub fn is_silent(&self, horizon: usize) -> bool {
        self.values.iter().take(horizon).all(|&v| v == 0.0)
    }

    pub(crate) fn check_horizon(&self, horizon: usize) -> Result<()> {
        if horizon > self.values.len() {
            return Err(Error::InputLength { horizon, len: self.values.len() });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for LoadSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// Which state equation produced a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Classical,
    SingleDelay,
    ThreeDelay,
    Kernel,
}

impl Variant {
    pub const ALL: [Variant; 4] =
        [Variant::Classical, Variant::SingleDelay, Variant::ThreeDelay, Variant::Kernel];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Classical => "classical",
            Variant::SingleDelay => "single_delay",
            Variant::ThreeDelay => "three_delay",
            Variant::Kernel => "kernel",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL.into_iter().find(|v| v.name() == s).ok_or_else(|| {
            Error::Config(format!(
                "unknown variant `{s}`; expected one of: classical, single_delay, three_delay, kernel"
            ))
        })
    }
}

/// Discrete trajectory of a fitness or fatigue state, `g(0..N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSeries {
    values: Vec<f64>,
    variant: Variant,
}

impl StateSeries {
    pub(crate) fn new(values: Vec<f64>, variant: Variant) -> Self {
        Self { values, variant }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
