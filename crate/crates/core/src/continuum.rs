//! Method-of-steps integration of the delay equations on a sub-daily grid.
//!
//! Each day is split into `m` panels of width `h = 1/m`. On a panel the
//! variation-of-constants form
//!
//! ```text
//! g(t+h) = g(t) e^{-h/tau} + integral_t^{t+h} [w(s) - sum_j r_j g(s-j)] e^{-(t+h-s)/tau} ds
//! ```
//!
//! is approximated by evaluating the whole integrand at the left endpoint,
//! which keeps the exponential attenuation exact:
//! `g_{i+1} = e^{-h/tau} (g_i + h [w(floor(t_i)) - sum_j r_j g_{i - j m}])`.
//! Delays are whole days, so the delayed value is always a stored grid point.
//! With `m = 1` the scheme is the day-grid recursion; as `m` grows it
//! converges to the continuous solution at first order.

use crate::error::{Error, Result};
use crate::model::{LoadSeries, SingleDelayParams, ThreeDelayParams};

/// Load read as a step function, `w(t) = w(floor(t))`.
#[derive(Debug, Clone, Copy)]
pub struct StepLoad<'a>(pub &'a LoadSeries);

impl StepLoad<'_> {
    pub fn at_day(&self, day: usize) -> f64 {
        self.0.values()[day]
    }
}

impl<'a> From<&'a LoadSeries> for StepLoad<'a> {
    fn from(w: &'a LoadSeries) -> Self {
        StepLoad(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridParams {
    SingleDelay(SingleDelayParams),
    ThreeDelay(ThreeDelayParams),
}

/// State sampled at `t = j/m`, `j = 0..=days*m`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSolution {
    substeps_per_day: usize,
    values: Vec<f64>,
    params: GridParams,
}

impl GridSolution {
    pub fn substeps_per_day(&self) -> usize {
        self.substeps_per_day
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn params(&self) -> &GridParams {
        &self.params
    }

    pub fn days(&self) -> usize {
        (self.values.len() - 1) / self.substeps_per_day
    }

    /// Values at whole days `0..=days`.
    pub fn day_values(&self) -> Vec<f64> {
        self.values.iter().step_by(self.substeps_per_day).copied().collect()
    }
}

fn integrate(
    w: StepLoad<'_>,
    tau_decay: f64,
    rates: &[f64],
    days: usize,
    substeps: usize,
) -> Result<Vec<f64>> {
    if substeps == 0 {
        return Err(Error::param("substeps per day must be at least 1"));
    }
    w.0.check_horizon(days)?;
    let h = 1.0 / substeps as f64;
    let a = (-h / tau_decay).exp();
    let n = days * substeps;
    let mut g = vec![0.0; n + 1];
    for i in 0..n {
        let mut drive = w.at_day(i / substeps);
        for (lag, &r) in rates.iter().enumerate() {
            let back = (lag + 1) * substeps;
            if i >= back {
                drive -= r * g[i - back];
            }
        }
        g[i + 1] = a * (g[i] + h * drive);
    }
    Ok(g)
}

pub fn integrate_single_delay(
    w: StepLoad<'_>,
    params: &SingleDelayParams,
    days: usize,
    substeps: usize,
) -> Result<GridSolution> {
    let values = integrate(w, params.tau_decay(), &[params.tau_lag().rate()], days, substeps)?;
    Ok(GridSolution { substeps_per_day: substeps, values, params: GridParams::SingleDelay(*params) })
}

pub fn integrate_three_delay(
    w: StepLoad<'_>,
    params: &ThreeDelayParams,
    days: usize,
    substeps: usize,
) -> Result<GridSolution> {
    let lags = params.lags().map(|l| l.rate());
    let values = integrate(w, params.tau_decay(), &lags, days, substeps)?;
    Ok(GridSolution { substeps_per_day: substeps, values, params: GridParams::ThreeDelay(*params) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbePoint {
    pub substeps: usize,
    /// Sup-norm distance to the finest grid, taken over this grid's points.
    pub difference: f64,
}

/// Integrates on each grid in `m_list` and measures the distance of each to
/// the finest one. The last entry is the reference and has difference 0.
pub fn convergence_probe(
    w: StepLoad<'_>,
    params: &SingleDelayParams,
    days: usize,
    m_list: &[usize],
) -> Result<Vec<ProbePoint>> {
    let Some(&finest) = m_list.last() else {
        return Err(Error::param("convergence probe needs at least one grid"));
    };
    if m_list.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::param("substep counts must be strictly increasing"));
    }
    if let Some(&m) = m_list.iter().find(|&&m| m == 0 || finest % m != 0) {
        return Err(Error::param(format!(
            "substep count {m} does not divide the finest grid {finest}"
        )));
    }
    let reference = integrate_single_delay(w, params, days, finest)?;
    m_list
        .iter()
        .map(|&m| {
            let coarse = integrate_single_delay(w, params, days, m)?;
            let stride = finest / m;
            let difference = coarse
                .values()
                .iter()
                .enumerate()
                .map(|(j, v)| (v - reference.values()[j * stride]).abs())
                .fold(0.0, f64::max);
            Ok(ProbePoint { substeps: m, difference })
        })
        .collect()
}

/// `difference(2m) / difference(m)` for each consecutive pair of probe points
/// whose grid doubles. Pairs with a zero difference are skipped.
pub fn halving_ratios(probe: &[ProbePoint]) -> Vec<f64> {
    probe
        .windows(2)
        .filter(|p| p[1].substeps == 2 * p[0].substeps)
        .filter(|p| p[0].difference > 0.0 && p[1].difference > 0.0)
        .map(|p| p[1].difference / p[0].difference)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::eval_single_delay_recursive;

    #[test]
    fn zero_substeps_rejected() {
        let w = LoadSeries::zeros(3);
        let p = SingleDelayParams::new(2.0, 3.0).unwrap();
        assert!(integrate_single_delay(StepLoad(&w), &p, 2, 0).is_err());
    }

    #[test]
    fn unit_grid_is_day_recursion() {
        let w = LoadSeries::new(vec![0.0, 4.0, 1.0, 0.0, 7.0, 2.0]).unwrap();
        let p = SingleDelayParams::new(3.0, 2.0).unwrap();
        let grid = integrate_single_delay(StepLoad(&w), &p, 5, 1).unwrap();
        let rec = eval_single_delay_recursive(&w, &p, 6).unwrap();
        for (a, b) in grid.day_values().iter().zip(rec.values()) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
        assert_eq!(grid.values().len(), 6);
        assert_eq!(grid.days(), 5);
    }

    #[test]
    fn zero_load_stays_zero() {
        let w = LoadSeries::zeros(10);
        let p = ThreeDelayParams::new(3.0, 2.0, 5.0, 9.0).unwrap();
        for m in [1, 3, 16] {
            let g = integrate_three_delay(StepLoad(&w), &p, 9, m).unwrap();
            assert!(g.values().iter().all(|&v| v == 0.0));
            assert_eq!(g.values().len(), 9 * m + 1);
        }
    }

    #[test]
    fn probe_rejects_bad_grids() {
        let w = LoadSeries::zeros(3);
        let p = SingleDelayParams::new(2.0, 3.0).unwrap();
        assert!(convergence_probe(StepLoad(&w), &p, 2, &[1, 3, 4]).is_err());
        assert!(convergence_probe(StepLoad(&w), &p, 2, &[2, 1]).is_err());
        assert!(convergence_probe(StepLoad(&w), &p, 2, &[]).is_err());
    }

    #[test]
    fn probe_zero_load_has_no_error() {
        let w = LoadSeries::zeros(5);
        let p = SingleDelayParams::new(2.0, 3.0).unwrap();
        let probe = convergence_probe(StepLoad(&w), &p, 4, &[1, 2, 4, 8]).unwrap();
        assert!(probe.iter().all(|pt| pt.difference == 0.0));
        assert!(halving_ratios(&probe).is_empty());
    }
}
