use crate::error::{Error, Result};

fn check_decay(tau: f64) -> Result<f64> {
    if tau.is_finite() && tau > 0.0 {
        Ok(tau)
    } else {
        Err(Error::param(format!("decay time constant must be positive and finite, got {tau}")))
    }
}

/// Time constant (days) weighting a delayed state, entering the equation as
/// `-(1/tau) g(t - lag)`.
///
/// `LagConstant::NONE` is the infinite time constant: its rate is exactly
/// zero and the delayed term vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagConstant(f64);

impl LagConstant {
    pub const NONE: LagConstant = LagConstant(f64::INFINITY);

    pub fn new(tau: f64) -> Result<Self> {
        if tau > 0.0 && !tau.is_nan() {
            Ok(Self(tau))
        } else {
            Err(Error::param(format!("lag time constant must be positive or +inf, got {tau}")))
        }
    }

    /// Builds the constant from its rate `1/tau`; a zero rate gives `NONE`.
    /// Negative rates are accepted and yield negative time constants.
    pub fn from_rate(rate: f64) -> Result<Self> {
        if !rate.is_finite() {
            return Err(Error::param(format!("lag rate must be finite, got {rate}")));
        }
        if rate == 0.0 {
            Ok(Self::NONE)
        } else {
            Ok(Self(1.0 / rate))
        }
    }

    pub fn tau(self) -> f64 {
        self.0
    }

    /// `1/tau`, exactly zero for `NONE`.
    pub fn rate(self) -> f64 {
        if self.0.is_infinite() {
            0.0
        } else {
            1.0 / self.0
        }
    }

    pub fn is_none(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0.0
    }
}

/// Classical first-order state: `g' = -g/tau_decay + w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstOrderParams {
    tau_decay: f64,
}

impl FirstOrderParams {
    pub fn new(tau_decay: f64) -> Result<Self> {
        Ok(Self { tau_decay: check_decay(tau_decay)? })
    }

    pub fn tau_decay(&self) -> f64 {
        self.tau_decay
    }
}

/// One-day delayed feedback: `g' = -g/tau_decay - g(t-1)/tau_lag + w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleDelayParams {
    tau_decay: f64,
    tau_lag: LagConstant,
}

impl SingleDelayParams {
    pub fn new(tau_decay: f64, tau_lag: f64) -> Result<Self> {
        Ok(Self { tau_decay: check_decay(tau_decay)?, tau_lag: LagConstant::new(tau_lag)? })
    }

    pub fn with_lag(tau_decay: f64, tau_lag: LagConstant) -> Result<Self> {
        if tau_lag.is_negative() {
            return Err(Error::param("lag time constant must be positive or +inf"));
        }
        Ok(Self { tau_decay: check_decay(tau_decay)?, tau_lag })
    }

    pub fn tau_decay(&self) -> f64 {
        self.tau_decay
    }

    pub fn tau_lag(&self) -> LagConstant {
        self.tau_lag
    }
}

/// Feedback from the three previous days, lags 1, 2 and 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeDelayParams {
    tau_decay: f64,
    lags: [LagConstant; 3],
}

impl ThreeDelayParams {
    pub fn new(tau_decay: f64, tau_lag1: f64, tau_lag2: f64, tau_lag3: f64) -> Result<Self> {
        Ok(Self {
            tau_decay: check_decay(tau_decay)?,
            lags: [
                LagConstant::new(tau_lag1)?,
                LagConstant::new(tau_lag2)?,
                LagConstant::new(tau_lag3)?,
            ],
        })
    }

    pub fn with_lags(tau_decay: f64, lags: [LagConstant; 3]) -> Result<Self> {
        if lags.iter().any(|l| l.is_negative()) {
            return Err(Error::param("lag time constants must be positive or +inf"));
        }
        Ok(Self { tau_decay: check_decay(tau_decay)?, lags })
    }

    /// Skips the sign check; negative lags come out of the kernel mapping.
    pub(crate) fn with_signed_lags(tau_decay: f64, lags: [LagConstant; 3]) -> Result<Self> {
        Ok(Self { tau_decay: check_decay(tau_decay)?, lags })
    }

    pub fn tau_decay(&self) -> f64 {
        self.tau_decay
    }

    pub fn lags(&self) -> [LagConstant; 3] {
        self.lags
    }

    pub(crate) fn rates(&self) -> [f64; 3] {
        self.lags.map(LagConstant::rate)
    }
}

impl From<SingleDelayParams> for ThreeDelayParams {
    fn from(p: SingleDelayParams) -> Self {
        Self { tau_decay: p.tau_decay, lags: [p.tau_lag, LagConstant::NONE, LagConstant::NONE] }
    }
}

/// Memory-kernel state: `g' = -g/tau_decay + tau5 * sum_j weights[j] g(t-1-j) + w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    tau_decay: f64,
    tau5: f64,
    weights: [f64; 3],
}

impl KernelParams {
    pub const DEFAULT_WEIGHTS: [f64; 3] = [0.5, 0.3, 0.2];

    pub fn new(tau_decay: f64, tau5: f64) -> Result<Self> {
        Self::with_weights(tau_decay, tau5, Self::DEFAULT_WEIGHTS)
    }

    pub fn with_weights(tau_decay: f64, tau5: f64, weights: [f64; 3]) -> Result<Self> {
        if !tau5.is_finite() {
            return Err(Error::param(format!("kernel gain must be finite, got {tau5}")));
        }
        if weights.iter().any(|&w| !(w > 0.0 && w < 1.0)) {
            return Err(Error::param(format!("kernel weights must lie in (0, 1), got {weights:?}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::param(format!("kernel weights must sum to 1, got {sum}")));
        }
        Ok(Self { tau_decay: check_decay(tau_decay)?, tau5, weights })
    }

    pub fn tau_decay(&self) -> f64 {
        self.tau_decay
    }

    pub fn tau5(&self) -> f64 {
        self.tau5
    }

    pub fn weights(&self) -> [f64; 3] {
        self.weights
    }
}
