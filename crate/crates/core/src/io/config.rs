//! Run configuration, a TOML document.
//!
//! ```toml
//! variant = "single_delay"      # classical | single_delay | three_delay | kernel
//! horizon = 120                 # days to predict; defaults to the load length
//!
//! [bounds]                      # [lower, upper]; tau2/tau4 uppers may be inf
//! p0 = [450.0, 550.0]           # derived from the observations when omitted
//! k1 = [1e-6, 1000.0]
//! k2 = [1e-6, 1000.0]
//! tau1 = [1.0, 500.0]           # fitness decay
//! tau2 = [1.0, inf]             # fitness lag(s)
//! tau3 = [1.0, 500.0]           # fatigue decay
//! tau4 = [1.0, inf]             # fatigue lag(s)
//! tau5 = [-1.0, 0.5]            # kernel gain
//!
//! [fit]
//! starts = 20
//! seed = 0
//! max_iterations = 20000
//! tolerance = 1e-10
//! simplex_tolerance = 1e-7
//! fix_p0 = 500.0                # omit to estimate p0
//!
//! [chart]
//! width = 900
//! height = 600
//! fit_title = "Performance"
//! load_title = "Training load"
//! ```
//!
//! Every key except `variant` is optional. Unknown keys are rejected.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::estimation::{FitConfig, Interval, ParamBounds};
use crate::model::Variant;

#[derive(Debug, Clone, PartialEq)]
pub struct ChartConfig {
    pub width: f64,
    pub height: f64,
    pub fit_title: String,
    pub load_title: String,
}

impl Default for ChartConfig {
    fn default() -> Self {
        Self {
            width: 900.0,
            height: 600.0,
            fit_title: "Observed (red) and predicted (blue) performance".into(),
            load_title: "Training load w(t)".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub variant: Variant,
    pub horizon: Option<usize>,
    pub bounds: ParamBounds,
    pub fit: FitConfig,
    pub chart: ChartConfig,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    variant: String,
    horizon: Option<usize>,
    #[serde(default)]
    bounds: RawBounds,
    #[serde(default)]
    fit: RawFit,
    #[serde(default)]
    chart: RawChart,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawBounds {
    p0: Option<Interval>,
    k1: Option<Interval>,
    k2: Option<Interval>,
    tau1: Option<Interval>,
    tau2: Option<Interval>,
    tau3: Option<Interval>,
    tau4: Option<Interval>,
    tau5: Option<Interval>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawFit {
    starts: Option<usize>,
    seed: Option<u64>,
    max_iterations: Option<usize>,
    tolerance: Option<f64>,
    simplex_tolerance: Option<f64>,
    fix_p0: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawChart {
    width: Option<f64>,
    height: Option<f64>,
    fit_title: Option<String>,
    load_title: Option<String>,
}

pub fn load_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
    let variant: Variant = raw.variant.parse()?;
    if raw.horizon == Some(0) {
        return Err(Error::Config("horizon must be at least 1".into()));
    }

    let d = ParamBounds::default();
    let b = raw.bounds;
    let bounds = ParamBounds {
        p0: b.p0,
        k1: b.k1.unwrap_or(d.k1),
        k2: b.k2.unwrap_or(d.k2),
        tau1: b.tau1.unwrap_or(d.tau1),
        tau2: b.tau2.unwrap_or(d.tau2),
        tau3: b.tau3.unwrap_or(d.tau3),
        tau4: b.tau4.unwrap_or(d.tau4),
        tau5: b.tau5.unwrap_or(d.tau5),
    };
    bounds.validate()?;

    let d = FitConfig::default();
    let f = raw.fit;
    let fit = FitConfig {
        starts: f.starts.unwrap_or(d.starts),
        seed: f.seed.unwrap_or(d.seed),
        max_iterations: f.max_iterations.unwrap_or(d.max_iterations),
        tolerance: f.tolerance.unwrap_or(d.tolerance),
        simplex_tolerance: f.simplex_tolerance.unwrap_or(d.simplex_tolerance),
        fix_p0: f.fix_p0,
    };
    fit.validate()?;

    let d = ChartConfig::default();
    let c = raw.chart;
    let chart = ChartConfig {
        width: c.width.unwrap_or(d.width),
        height: c.height.unwrap_or(d.height),
        fit_title: c.fit_title.unwrap_or(d.fit_title),
        load_title: c.load_title.unwrap_or(d.load_title),
    };
    if !(chart.width.is_finite() && chart.width > 0.0 && chart.height.is_finite() && chart.height > 0.0) {
        return Err(Error::Config("chart dimensions must be positive".into()));
    }

    Ok(RunConfig { variant, horizon: raw.horizon, bounds, fit, chart })
}
