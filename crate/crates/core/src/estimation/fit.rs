use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::bounds::{Interval, Layout, ParamBounds};
use super::metrics::{r_squared, sse_from_trajectory, ObservationSet};
use super::nelder_mead::{nelder_mead, Minimum, SimplexOptions};
use crate::error::{Error, Result};
use crate::model::{eval_performance, LoadSeries, PerformanceParams, Variant};

/// Multi-start settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    pub starts: usize,
    /// Simplex iterations allowed per start, restarts included.
    pub max_iterations: usize,
    /// Absolute SSE spread across the simplex at which a start stops.
    pub tolerance: f64,
    /// Simplex size, in search coordinates, at which a start stops.
    pub simplex_tolerance: f64,
    pub seed: u64,
    pub fix_p0: Option<f64>,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            starts: 20,
            max_iterations: 20_000,
            tolerance: 1e-10,
            simplex_tolerance: 1e-7,
            seed: 0,
            fix_p0: None,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(Error::Config("fit.starts must be at least 1".into()));
        }
        if [self.tolerance, self.simplex_tolerance].iter().any(|t| t.is_nan() || *t <= 0.0) {
            return Err(Error::Config("fit tolerances must be positive".into()));
        }
        if let Some(p0) = self.fix_p0 {
            if !p0.is_finite() {
                return Err(Error::Config("fit.fix_p0 must be finite".into()));
            }
        }
        Ok(())
    }

    pub fn simplex_options(&self) -> SimplexOptions {
        SimplexOptions {
            max_iterations: self.max_iterations,
            f_tolerance: self.tolerance,
            x_tolerance: self.simplex_tolerance,
            initial_step: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StartSummary {
    pub sse: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub params: PerformanceParams,
    pub sse: f64,
    /// `None` when the observations have no variance (or fewer than two).
    pub r2: Option<f64>,
    /// Performance over the whole load series.
    pub predicted: Vec<f64>,
    pub starts_converged: usize,
    pub best_start_index: usize,
    pub iterations_used: usize,
    /// Fewer observations than free parameters.
    pub underdetermined: bool,
    /// No load over the fitted horizon: the gains and time constants have no
    /// influence on the prediction.
    pub non_identifiable: bool,
    pub free_parameters: usize,
    pub starts: Vec<StartSummary>,
}

/// Fits the single-delay performance model.
pub fn fit(
    w: &LoadSeries,
    obs: &ObservationSet,
    bounds: &ParamBounds,
    config: &FitConfig,
) -> Result<FitResult> {
    fit_variant(Variant::SingleDelay, w, obs, bounds, config, &[])
}

/// Default `p0` box when none is configured: the observed range widened by
/// its own width on each side.
fn derived_p0_box(obs: &ObservationSet) -> Interval {
    let (lo, hi) = obs.range();
    let span = (hi - lo).max(1e-3 * lo.abs().max(hi.abs())).max(1e-6);
    Interval::new(lo - span, hi + span)
}

/// Stratified draw of `count` points in `(0, 1)^dim`: each coordinate hits
/// every one of the `count` strata exactly once.
fn stratified_starts(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = vec![vec![0.0; dim]; count];
    let mut strata: Vec<usize> = (0..count).collect();
    for d in 0..dim {
        strata.shuffle(&mut rng);
        for (point, &s) in points.iter_mut().zip(&strata) {
            let u: f64 = rng.random();
            point[d] = (s as f64 + u) / count as f64;
        }
    }
    points
}

fn to_search(u: f64) -> f64 {
    // Keep starts away from the flat tails of the logistic.
    let u = 0.02 + 0.96 * u;
    (u / (1.0 - u)).ln()
}

/// Runs one start. The simplex is rebuilt around its best vertex after each
/// run, which unsticks collapsed simplices; restarts stop once one fails to
/// improve by more than the tolerance or the iteration budget is spent.
fn run_start<F: Fn(&[f64]) -> f64>(
    objective: &F,
    start: &[f64],
    config: &FitConfig,
) -> Option<Minimum> {
    let mut options = config.simplex_options();
    let mut best = nelder_mead(objective, start, &options).ok()?;
    let mut used = best.iterations;
    while used < config.max_iterations {
        options.max_iterations = config.max_iterations - used;
        options.initial_step = RESTART_STEP;
        let next = nelder_mead(objective, &best.x, &options).ok()?;
        used += next.iterations;
        let improved = best.value - next.value > config.tolerance;
        let mut trace = std::mem::take(&mut best.trace);
        trace.extend(&next.trace);
        best = Minimum { trace, ..next };
        if !improved {
            break;
        }
    }
    best.iterations = used;
    Some(best)
}

const RESTART_STEP: f64 = 0.25;

/// Least-squares fit of `variant`. `warm_starts` are extra starting points,
/// typically fits of a nested variant embedded with
/// [`PerformanceParams::embed_in`]; those of another variant are ignored.
pub fn fit_variant(
    variant: Variant,
    w: &LoadSeries,
    obs: &ObservationSet,
    bounds: &ParamBounds,
    config: &FitConfig,
    warm_starts: &[PerformanceParams],
) -> Result<FitResult> {
    bounds.validate()?;
    config.validate()?;
    let horizon = w.len();
    if obs.last_day() >= horizon {
        return Err(Error::input(format!(
            "observation day {} is outside the load series (length {horizon})",
            obs.last_day()
        )));
    }
    let p0_box = bounds.p0.unwrap_or_else(|| derived_p0_box(obs));
    let layout = Layout::new(variant, bounds, p0_box, config.fix_p0);
    let dim = layout.dimension();
    let obs_horizon = obs.last_day() + 1;

    let objective = |z: &[f64]| -> f64 {
        let Ok(params) = layout.decode(z) else { return f64::INFINITY };
        match eval_performance(w, &params, obs_horizon) {
            Ok(p) => sse_from_trajectory(&p, obs).unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        }
    };

    let mut starts: Vec<Vec<f64>> = stratified_starts(dim, config.starts, config.seed)
        .into_iter()
        .map(|u| u.into_iter().map(to_search).collect())
        .collect();
    starts.extend(warm_starts.iter().filter_map(|p| layout.encode(p)));

    let runs: Vec<Option<Minimum>> =
        starts.par_iter().map(|s| run_start(&objective, s, config)).collect();

    let summaries: Vec<StartSummary> = runs
        .iter()
        .map(|r| match r {
            Some(m) => StartSummary { sse: m.value, iterations: m.iterations, converged: m.converged },
            None => StartSummary { sse: f64::INFINITY, iterations: 0, converged: false },
        })
        .collect();
    let (best_start_index, best) = runs
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.as_ref().map(|m| (i, m)))
        .min_by(|a, b| a.1.value.total_cmp(&b.1.value).then(a.0.cmp(&b.0)))
        .ok_or_else(|| Error::input("objective is not finite at any starting point"))?;

    let params = layout.decode(&best.x)?;
    let predicted = eval_performance(w, &params, horizon)?;
    let sse = sse_from_trajectory(&predicted, obs)?;
    let r2 = r_squared(&obs.sample(&predicted)?, obs).ok();

    Ok(FitResult {
        params,
        sse,
        r2,
        predicted,
        starts_converged: summaries.iter().filter(|s| s.converged).count(),
        best_start_index,
        iterations_used: summaries.iter().map(|s| s.iterations).sum(),
        underdetermined: obs.len() < dim,
        non_identifiable: w.is_silent(obs_horizon),
        free_parameters: dim,
        starts: summaries,
    })
}

/// Thin wrapper over [`eval_performance`] for fitted parameters.
pub fn predict(params: &PerformanceParams, w: &LoadSeries, horizon: usize) -> Result<Vec<f64>> {
    eval_performance(w, params, horizon)
}
