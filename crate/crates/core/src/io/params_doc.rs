//! Fitted parameters as a TOML document, readable by `ffdelay predict`.
//!
//! ```toml
//! variant = "single_delay"
//! p0 = 500.0
//! k1 = 0.1
//! k2 = 0.12
//!
//! [fitness]
//! tau_decay = 45.0
//! tau_lag = 20.0          # single_delay; `inf` disables the delayed term
//!
//! [fatigue]
//! tau_decay = 15.0
//! tau_lag = 10.0
//! ```
//!
//! `three_delay` states use `tau_lags = [a, b, c]`; `kernel` states use
//! `tau5` and an optional `weights = [0.5, 0.3, 0.2]`. A `[diagnostics]`
//! table written by `fit` is informational and ignored on read.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    FirstOrderParams, KernelParams, LagConstant, PerformanceParams, SingleDelayParams,
    StateParams, ThreeDelayParams, Variant,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDoc {
    tau_decay: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_lag: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_lags: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau5: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<[f64; 3]>,
}

/// Fit statistics stored next to the parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub sse: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    pub free_parameters: usize,
    pub observations: usize,
    pub starts_converged: usize,
    pub best_start_index: usize,
    pub underdetermined: bool,
    pub non_identifiable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsDoc {
    variant: Variant,
    p0: f64,
    k1: f64,
    k2: f64,
    fitness: StateDoc,
    fatigue: StateDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<Diagnostics>,
}

fn state_doc(s: &StateParams) -> StateDoc {
    let mut doc = StateDoc { tau_decay: s.tau_decay(), tau_lag: None, tau_lags: None, tau5: None, weights: None };
    match s {
        StateParams::Classical(_) => {}
        StateParams::SingleDelay(p) => doc.tau_lag = Some(p.tau_lag().tau()),
        StateParams::ThreeDelay(p) => doc.tau_lags = Some(p.lags().map(LagConstant::tau)),
        StateParams::Kernel(p) => {
            doc.tau5 = Some(p.tau5());
            doc.weights = Some(p.weights());
        }
    }
    doc
}

fn state_from_doc(variant: Variant, doc: &StateDoc, which: &str) -> Result<StateParams> {
    let missing = |key: &str| Error::Config(format!("{which}.{key} is required for variant {variant}"));
    let unexpected = |key: &str| Error::Config(format!("{which}.{key} does not apply to variant {variant}"));
    let check_unused = |keys: &[(&str, bool)]| -> Result<()> {
        match keys.iter().find(|(_, present)| *present) {
            Some((k, _)) => Err(unexpected(k)),
            None => Ok(()),
        }
    };
    let lag = ("tau_lag", doc.tau_lag.is_some());
    let lags = ("tau_lags", doc.tau_lags.is_some());
    let tau5 = ("tau5", doc.tau5.is_some());
    let weights = ("weights", doc.weights.is_some());
    Ok(match variant {
        Variant::Classical => {
            check_unused(&[lag, lags, tau5, weights])?;
            StateParams::Classical(FirstOrderParams::new(doc.tau_decay)?)
        }
        Variant::SingleDelay => {
            check_unused(&[lags, tau5, weights])?;
            let tau = doc.tau_lag.ok_or_else(|| missing("tau_lag"))?;
            StateParams::SingleDelay(SingleDelayParams::new(doc.tau_decay, tau)?)
        }
        Variant::ThreeDelay => {
            check_unused(&[lag, tau5, weights])?;
            let [a, b, c] = doc.tau_lags.ok_or_else(|| missing("tau_lags"))?;
            StateParams::ThreeDelay(ThreeDelayParams::new(doc.tau_decay, a, b, c)?)
        }
        Variant::Kernel => {
            check_unused(&[lag, lags])?;
            let tau5 = doc.tau5.ok_or_else(|| missing("tau5"))?;
            let weights = doc.weights.unwrap_or(KernelParams::DEFAULT_WEIGHTS);
            StateParams::Kernel(KernelParams::with_weights(doc.tau_decay, tau5, weights)?)
        }
    })
}

pub fn emit_params_toml(params: &PerformanceParams, diagnostics: Option<Diagnostics>) -> String {
    let doc = ParamsDoc {
        variant: params.variant(),
        p0: params.p0(),
        k1: params.k1(),
        k2: params.k2(),
        fitness: state_doc(params.fitness()),
        fatigue: state_doc(params.fatigue()),
        diagnostics,
    };
    toml::to_string(&doc).expect("parameter document always serialises")
}

pub fn parse_params_toml(text: &str) -> Result<PerformanceParams> {
    let doc: ParamsDoc = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
    let fitness = state_from_doc(doc.variant, &doc.fitness, "fitness")?;
    let fatigue = state_from_doc(doc.variant, &doc.fatigue, "fatigue")?;
    PerformanceParams::with_states(doc.p0, doc.k1, doc.k2, fitness, fatigue)
}
