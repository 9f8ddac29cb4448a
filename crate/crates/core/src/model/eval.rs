//! Day-grid evaluation of the four state equations.
//!
//! Every variant starts from zero history (`g(s) = 0` for `s <= 0`) and uses a
//! one-day step. The recursive forms step `g(k) -> g(k+1)`; the convolution
//! forms evaluate the equivalent exponentially weighted sums directly and are
//! `O(n^2)`.

use super::params::{
    FirstOrderParams, KernelParams, LagConstant, SingleDelayParams, ThreeDelayParams,
};
use super::series::{LoadSeries, StateSeries, Variant};
use crate::error::Result;

/// `exp(-k / tau)` for `k = 0..len`.
fn decay_table(tau: f64, len: usize) -> Vec<f64> {
    (0..len).map(|k| (-(k as f64) / tau).exp()).collect()
}

/// History lookup with zero initial history.
#[inline]
fn past(g: &[f64], index: isize) -> f64 {
    if index < 0 {
        0.0
    } else {
        g[index as usize]
    }
}

/// Classical model evaluated as the direct sum
/// `g(n) = sum_{i=0}^{n-1} w(i) exp(-(n-i)/tau)`.
pub fn eval_classical(
    w: &LoadSeries,
    params: &FirstOrderParams,
    horizon: usize,
) -> Result<StateSeries> {
    w.check_horizon(horizon)?;
    let load = w.values();
    let decay = decay_table(params.tau_decay(), horizon + 1);
    let g = (0..horizon)
        .map(|n| (0..n).map(|i| load[i] * decay[n - i]).sum())
        .collect();
    Ok(StateSeries::new(g, Variant::Classical))
}

/// `g(k+1) = [w(k) + g(k) - g(k-1)/tau_lag] exp(-1/tau_decay)`.
pub fn eval_single_delay_recursive(
    w: &LoadSeries,
    params: &SingleDelayParams,
    horizon: usize,
) -> Result<StateSeries> {
    w.check_horizon(horizon)?;
    let load = w.values();
    let a = (-1.0 / params.tau_decay()).exp();
    let r = params.tau_lag().rate();
    let mut g = vec![0.0; horizon];
    for k in 0..horizon.saturating_sub(1) {
        let prev = if k >= 1 { g[k - 1] } else { 0.0 };
        g[k + 1] = (load[k] + g[k] - r * prev) * a;
    }
    Ok(StateSeries::new(g, Variant::SingleDelay))
}

/// `g(n) = sum_{i=1}^{n-1} [w(i) - g(i-1)/tau_lag] exp(-(n-i)/tau_decay)`.
pub fn eval_single_delay_convolution(
    w: &LoadSeries,
    params: &SingleDelayParams,
    horizon: usize,
) -> Result<StateSeries> {
    w.check_horizon(horizon)?;
    let load = w.values();
    let decay = decay_table(params.tau_decay(), horizon + 1);
    let r = params.tau_lag().rate();
    let mut g = vec![0.0; horizon];
    for n in 1..horizon {
        g[n] = (1..n).map(|i| (load[i] - r * g[i - 1]) * decay[n - i]).sum();
    }
    Ok(StateSeries::new(g, Variant::SingleDelay))
}

/// `g(k+1) = [w(k) + g(k) - g(k-1)/tau2 - g(k-2)/tau3 - g(k-3)/tau4] exp(-1/tau_decay)`.
pub fn eval_three_delay_recursive(
    w: &LoadSeries,
    params: &ThreeDelayParams,
    horizon: usize,
) -> Result<StateSeries> {
    w.check_horizon(horizon)?;
    let load = w.values();
    let a = (-1.0 / params.tau_decay()).exp();
    let [r1, r2, r3] = params.rates();
    let mut g = vec![0.0; horizon];
    for k in 0..horizon.saturating_sub(1) {
        let k = k as isize;
        let ku = k as usize;
        g[ku + 1] = (load[ku] + g[ku]
            - r1 * past(&g, k - 1)
            - r2 * past(&g, k - 2)
            - r3 * past(&g, k - 3))
            * a;
    }
    Ok(StateSeries::new(g, Variant::ThreeDelay))
}

/// Three-delay state from the regrouped convolution sum:
///
/// ```text
/// g(n) = sum_{i=1}^{n-1} w(i) E(n-i)
///      - sum_{i=1}^{n-3} g(i-1) [r1 E(n-i) + r2 E(n-i-1) + r3 E(n-i-2)]
///      - g(n-3) [r1 E(2) + r2 E(1)]
///      - g(n-2) r1 E(1)
/// ```
///
/// with `E(k) = exp(-k/tau_decay)` and `r_j` the lag rates. The last two
/// terms collect the delayed contributions whose full three-term bracket
/// would reach past day `n - 1`.
pub fn eval_three_delay_convolution(
    w: &LoadSeries,
    params: &ThreeDelayParams,
    horizon: usize,
) -> Result<StateSeries> {
    w.check_horizon(horizon)?;
    let load = w.values();
    let e = decay_table(params.tau_decay(), horizon + 1);
    let [r1, r2, r3] = params.rates();
    let mut g = vec![0.0; horizon];
    for n in 1..horizon {
        let forced: f64 = (1..n).map(|i| load[i] * e[n - i]).sum();
        let grouped: f64 = (1..n.saturating_sub(2))
            .map(|i| g[i - 1] * (r1 * e[n - i] + r2 * e[n - i - 1] + r3 * e[n - i - 2]))
            .sum();
        let ni = n as isize;
        let boundary = past(&g, ni - 3) * (r1 * e[2] + r2 * e[1])
            + past(&g, ni - 2) * r1 * e[1];
        g[n] = forced - grouped - boundary;
    }
    Ok(StateSeries::new(g, Variant::ThreeDelay))
}

/// `g(k+1) = [w(k) + g(k) + tau5 (c1 g(k-1) + c2 g(k-2) + c3 g(k-3))] exp(-1/tau_decay)`
/// with the kernel weights `c_j`; the defaults are 0.5, 0.3, 0.2.
pub fn eval_kernel_recursive(
    w: &LoadSeries,
    params: &KernelParams,
    horizon: usize,
) -> Result<StateSeries> {
    w.check_horizon(horizon)?;
    let load = w.values();
    let a = (-1.0 / params.tau_decay()).exp();
    let tau5 = params.tau5();
    let [c1, c2, c3] = params.weights();
    let mut g = vec![0.0; horizon];
    for k in 0..horizon.saturating_sub(1) {
        let k = k as isize;
        let ku = k as usize;
        g[ku + 1] = (load[ku]
            + g[ku]
            + c1 * tau5 * past(&g, k - 1)
            + c2 * tau5 * past(&g, k - 2)
            + c3 * tau5 * past(&g, k - 3))
            * a;
    }
    Ok(StateSeries::new(g, Variant::Kernel))
}

/// Three-delay parameters reproducing a kernel model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMapping {
    pub params: ThreeDelayParams,
    /// Set when `tau5 > 0`: the lag constants are negative, outside the
    /// physical domain of the delay model, though the recursions still agree.
    pub sign_warning: bool,
}

/// Chooses `tau_{j+1} = -1 / (weight_j * tau5)` so the kernel recursion and the
/// three-delay recursion coincide.
pub fn kernel_to_three_delay(params: &KernelParams) -> Result<KernelMapping> {
    let tau5 = params.tau5();
    let lags = if tau5 == 0.0 {
        [LagConstant::NONE; 3]
    } else {
        let [c1, c2, c3] = params.weights();
        [
            LagConstant::from_rate(-c1 * tau5)?,
            LagConstant::from_rate(-c2 * tau5)?,
            LagConstant::from_rate(-c3 * tau5)?,
        ]
    };
    Ok(KernelMapping {
        params: ThreeDelayParams::with_signed_lags(params.tau_decay(), lags)?,
        sign_warning: tau5 > 0.0,
    })
}

/// Parameters of any of the four state equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateParams {
    Classical(FirstOrderParams),
    SingleDelay(SingleDelayParams),
    ThreeDelay(ThreeDelayParams),
    Kernel(KernelParams),
}

impl StateParams {
    pub fn variant(&self) -> Variant {
        match self {
            StateParams::Classical(_) => Variant::Classical,
            StateParams::SingleDelay(_) => Variant::SingleDelay,
            StateParams::ThreeDelay(_) => Variant::ThreeDelay,
            StateParams::Kernel(_) => Variant::Kernel,
        }
    }

    pub fn tau_decay(&self) -> f64 {
        match self {
            StateParams::Classical(p) => p.tau_decay(),
            StateParams::SingleDelay(p) => p.tau_decay(),
            StateParams::ThreeDelay(p) => p.tau_decay(),
            StateParams::Kernel(p) => p.tau_decay(),
        }
    }

    /// Evaluates the state with its step recursion. The classical model uses
    /// `g(k+1) = [w(k) + g(k)] exp(-1/tau)`, which is the direct sum of
    /// [`eval_classical`] in linear time.
    pub fn evaluate(&self, w: &LoadSeries, horizon: usize) -> Result<StateSeries> {
        match self {
            StateParams::Classical(p) => {
                w.check_horizon(horizon)?;
                let load = w.values();
                let a = (-1.0 / p.tau_decay()).exp();
                let mut g = vec![0.0; horizon];
                for k in 0..horizon.saturating_sub(1) {
                    g[k + 1] = (load[k] + g[k]) * a;
                }
                Ok(StateSeries::new(g, Variant::Classical))
            }
            StateParams::SingleDelay(p) => eval_single_delay_recursive(w, p, horizon),
            StateParams::ThreeDelay(p) => eval_three_delay_recursive(w, p, horizon),
            StateParams::Kernel(p) => eval_kernel_recursive(w, p, horizon),
        }
    }

    /// Re-expresses these parameters in a richer variant that contains this
    /// one as a special case. Returns `None` when no exact embedding exists.
    pub fn embed_in(&self, target: Variant) -> Option<StateParams> {
        use StateParams as S;
        use Variant as V;
        let none = LagConstant::NONE;
        let out = match (self, target) {
            (s, t) if s.variant() == t => *s,
            (S::Classical(p), V::SingleDelay) => {
                S::SingleDelay(SingleDelayParams::with_lag(p.tau_decay(), none).ok()?)
            }
            (S::Classical(p), V::ThreeDelay) => {
                S::ThreeDelay(ThreeDelayParams::with_lags(p.tau_decay(), [none; 3]).ok()?)
            }
            (S::Classical(p), V::Kernel) => S::Kernel(KernelParams::new(p.tau_decay(), 0.0).ok()?),
            (S::SingleDelay(p), V::ThreeDelay) => S::ThreeDelay((*p).into()),
            (S::Kernel(p), V::ThreeDelay) => {
                let mapped = kernel_to_three_delay(p).ok()?;
                if mapped.sign_warning {
                    return None;
                }
                S::ThreeDelay(mapped.params)
            }
            _ => return None,
        };
        Some(out)
    }
}
