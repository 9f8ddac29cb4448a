//! Box constraints and the unconstrained search coordinates used by `fit`.
//!
//! Every free parameter is reached through a logistic squash `s(z)` of an
//! unconstrained coordinate `z`, so any simplex vertex maps to a feasible
//! parameter set:
//!
//! * `p0` and the kernel gain: linear, `lo + (hi - lo) s(z)`;
//! * gains `k1, k2` and decay constants: logarithmic,
//!   `exp(ln lo + (ln hi - ln lo) s(z))`;
//! * lag constants: linear in the rate `1/tau`, over `[1/hi, 1/lo]`. An
//!   infinite upper bound makes the rate interval start at 0, so the
//!   no-feedback model sits on the boundary of the search box.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    FirstOrderParams, KernelParams, LagConstant, PerformanceParams, SingleDelayParams,
    StateParams, ThreeDelayParams, Variant,
};

/// Closed interval `[lower, upper]`, serialised as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub const fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lower && v <= self.upper
    }

    fn scaled(self, c: f64) -> Self {
        Self::new(self.lower * c, self.upper * c)
    }
}

impl From<[f64; 2]> for Interval {
    fn from([lower, upper]: [f64; 2]) -> Self {
        Self { lower, upper }
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lower, i.upper]
    }
}

/// Search box for the performance model.
///
/// `tau1`/`tau2` bound the fitness decay and lag constants, `tau3`/`tau4`
/// the fatigue ones; the three-delay model applies the lag bound to all of
/// its lags. `tau5` bounds the kernel gain. When `p0` is `None` it is derived
/// from the observations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamBounds {
    pub p0: Option<Interval>,
    pub k1: Interval,
    pub k2: Interval,
    pub tau1: Interval,
    pub tau2: Interval,
    pub tau3: Interval,
    pub tau4: Interval,
    pub tau5: Interval,
}

impl Default for ParamBounds {
    fn default() -> Self {
        Self {
            p0: None,
            k1: Interval::new(1e-6, 1e3),
            k2: Interval::new(1e-6, 1e3),
            tau1: Interval::new(1.0, 500.0),
            tau2: Interval::new(1.0, f64::INFINITY),
            tau3: Interval::new(1.0, 500.0),
            tau4: Interval::new(1.0, f64::INFINITY),
            tau5: Interval::new(-1.0, 0.5),
        }
    }
}

impl ParamBounds {
    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, i: Interval, positive: bool, open_top: bool| -> Result<()> {
            let finite_top = i.upper.is_finite() || (open_top && i.upper == f64::INFINITY);
            if !i.lower.is_finite() || !finite_top || i.upper.is_nan() {
                return Err(Error::Config(format!("bounds.{name}: limits must be finite")));
            }
            if i.lower >= i.upper {
                return Err(Error::Config(format!(
                    "bounds.{name}: lower bound {} is not below upper bound {}",
                    i.lower, i.upper
                )));
            }
            if positive && i.lower <= 0.0 {
                return Err(Error::Config(format!("bounds.{name}: lower bound must be positive")));
            }
            Ok(())
        };
        if let Some(p0) = self.p0 {
            check("p0", p0, false, false)?;
        }
        check("k1", self.k1, true, false)?;
        check("k2", self.k2, true, false)?;
        check("tau1", self.tau1, true, false)?;
        check("tau2", self.tau2, true, true)?;
        check("tau3", self.tau3, true, false)?;
        check("tau4", self.tau4, true, true)?;
        check("tau5", self.tau5, false, false)
    }

    /// Scales the `p0`, `k1` and `k2` boxes by `c`.
    pub fn scale_performance(&self, c: f64) -> Self {
        Self {
            p0: self.p0.map(|i| i.scaled(c)),
            k1: self.k1.scaled(c),
            k2: self.k2.scaled(c),
            ..*self
        }
    }
}

fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Largest `|z|` produced by [`Coordinate::encode`].
pub(crate) const Z_LIMIT: f64 = 50.0;

fn logit(u: f64) -> f64 {
    (u / (1.0 - u)).ln().clamp(-Z_LIMIT, Z_LIMIT)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Scale {
    Linear,
    Log,
    Rate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Coordinate {
    scale: Scale,
    interval: Interval,
}

impl Coordinate {
    fn decode(&self, z: f64) -> f64 {
        let Interval { lower, upper } = self.interval;
        let s = logistic(z);
        match self.scale {
            Scale::Linear => (lower + (upper - lower) * s).clamp(lower, upper),
            Scale::Log => (lower.ln() + (upper.ln() - lower.ln()) * s).exp().clamp(lower, upper),
            Scale::Rate => {
                let (lo, hi) = (1.0 / upper, 1.0 / lower);
                (lo + (hi - lo) * s).clamp(lo, hi)
            }
        }
    }

    fn encode(&self, v: f64) -> f64 {
        let Interval { lower, upper } = self.interval;
        let u = match self.scale {
            Scale::Linear => (v - lower) / (upper - lower),
            Scale::Log => (v.ln() - lower.ln()) / (upper.ln() - lower.ln()),
            Scale::Rate => {
                let (lo, hi) = (1.0 / upper, 1.0 / lower);
                (v - lo) / (hi - lo)
            }
        };
        logit(u.clamp(0.0, 1.0))
    }
}

/// Which model quantity a search coordinate controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    P0,
    K1,
    K2,
    FitnessDecay,
    FitnessLag(usize),
    FitnessGain,
    FatigueDecay,
    FatigueLag(usize),
    FatigueGain,
}

/// Maps between search vectors and [`PerformanceParams`] of one variant.
#[derive(Debug, Clone)]
pub struct Layout {
    variant: Variant,
    fixed_p0: Option<f64>,
    slots: Vec<(Slot, Coordinate)>,
}

impl Layout {
    pub fn new(variant: Variant, bounds: &ParamBounds, p0: Interval, fixed_p0: Option<f64>) -> Self {
        let c = |scale, interval| Coordinate { scale, interval };
        let mut slots = Vec::new();
        if fixed_p0.is_none() {
            slots.push((Slot::P0, c(Scale::Linear, p0)));
        }
        slots.push((Slot::K1, c(Scale::Log, bounds.k1)));
        slots.push((Slot::K2, c(Scale::Log, bounds.k2)));
        for fitness in [true, false] {
            let (decay, lag) = if fitness { (bounds.tau1, bounds.tau2) } else { (bounds.tau3, bounds.tau4) };
            let (d, l, g): (Slot, fn(usize) -> Slot, Slot) = if fitness {
                (Slot::FitnessDecay, Slot::FitnessLag, Slot::FitnessGain)
            } else {
                (Slot::FatigueDecay, Slot::FatigueLag, Slot::FatigueGain)
            };
            slots.push((d, c(Scale::Log, decay)));
            let lags = match variant {
                Variant::Classical | Variant::Kernel => 0,
                Variant::SingleDelay => 1,
                Variant::ThreeDelay => 3,
            };
            for j in 0..lags {
                slots.push((l(j), c(Scale::Rate, lag)));
            }
            if variant == Variant::Kernel {
                slots.push((g, c(Scale::Linear, bounds.tau5)));
            }
        }
        Self { variant, fixed_p0, slots }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn dimension(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> impl Iterator<Item = Slot> + '_ {
        self.slots.iter().map(|s| s.0)
    }

    pub fn decode(&self, z: &[f64]) -> Result<PerformanceParams> {
        let mut p0 = self.fixed_p0.unwrap_or(0.0);
        let (mut k1, mut k2) = (1.0, 1.0);
        let mut decay = [1.0; 2];
        let mut rates = [[0.0; 3]; 2];
        let mut gain = [0.0; 2];
        for (&(slot, coord), &zi) in self.slots.iter().zip(z) {
            let v = coord.decode(zi);
            match slot {
                Slot::P0 => p0 = v,
                Slot::K1 => k1 = v,
                Slot::K2 => k2 = v,
                Slot::FitnessDecay => decay[0] = v,
                Slot::FatigueDecay => decay[1] = v,
                Slot::FitnessLag(j) => rates[0][j] = v,
                Slot::FatigueLag(j) => rates[1][j] = v,
                Slot::FitnessGain => gain[0] = v,
                Slot::FatigueGain => gain[1] = v,
            }
        }
        let state = |i: usize| -> Result<StateParams> {
            let lag = |j: usize| LagConstant::from_rate(rates[i][j]);
            Ok(match self.variant {
                Variant::Classical => StateParams::Classical(FirstOrderParams::new(decay[i])?),
                Variant::SingleDelay => {
                    StateParams::SingleDelay(SingleDelayParams::with_lag(decay[i], lag(0)?)?)
                }
                Variant::ThreeDelay => StateParams::ThreeDelay(ThreeDelayParams::with_lags(
                    decay[i],
                    [lag(0)?, lag(1)?, lag(2)?],
                )?),
                Variant::Kernel => StateParams::Kernel(KernelParams::new(decay[i], gain[i])?),
            })
        };
        PerformanceParams::with_states(p0, k1, k2, state(0)?, state(1)?)
    }

    /// Search vector for `params`, clamped into the box. `None` if the
    /// parameters belong to a different variant.
    pub fn encode(&self, params: &PerformanceParams) -> Option<Vec<f64>> {
        if params.variant() != self.variant {
            return None;
        }
        let lag_rate = |s: &StateParams, j: usize| match s {
            StateParams::SingleDelay(p) if j == 0 => p.tau_lag().rate(),
            StateParams::ThreeDelay(p) => p.lags()[j].rate(),
            _ => 0.0,
        };
        let gain = |s: &StateParams| match s {
            StateParams::Kernel(p) => p.tau5(),
            _ => 0.0,
        };
        Some(
            self.slots
                .iter()
                .map(|&(slot, coord)| {
                    let v = match slot {
                        Slot::P0 => params.p0(),
                        Slot::K1 => params.k1(),
                        Slot::K2 => params.k2(),
                        Slot::FitnessDecay => params.fitness().tau_decay(),
                        Slot::FatigueDecay => params.fatigue().tau_decay(),
                        Slot::FitnessLag(j) => lag_rate(params.fitness(), j),
                        Slot::FatigueLag(j) => lag_rate(params.fatigue(), j),
                        Slot::FitnessGain => gain(params.fitness()),
                        Slot::FatigueGain => gain(params.fatigue()),
                    };
                    coord.encode(v)
                })
                .collect(),
        )
    }
}

/// Does `params` respect `bounds` (with `p0` checked against `p0_box`)?
pub fn within_bounds(params: &PerformanceParams, bounds: &ParamBounds, p0_box: Interval) -> bool {
    let lag_ok = |s: &StateParams, lag: Interval| {
        let in_rate = |l: LagConstant| {
            let r = l.rate();
            r >= 1.0 / lag.upper && r <= 1.0 / lag.lower
        };
        match s {
            StateParams::SingleDelay(p) => in_rate(p.tau_lag()),
            StateParams::ThreeDelay(p) => p.lags().into_iter().all(in_rate),
            StateParams::Kernel(p) => bounds.tau5.contains(p.tau5()),
            StateParams::Classical(_) => true,
        }
    };
    p0_box.contains(params.p0())
        && bounds.k1.contains(params.k1())
        && bounds.k2.contains(params.k2())
        && bounds.tau1.contains(params.fitness().tau_decay())
        && bounds.tau3.contains(params.fatigue().tau_decay())
        && lag_ok(params.fitness(), bounds.tau2)
        && lag_ok(params.fatigue(), bounds.tau4)
}
