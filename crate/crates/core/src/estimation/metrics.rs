use crate::error::{Error, Result};
use crate::model::{eval_performance, LoadSeries, PerformanceParams};

/// Sparse measured performance, `(day, value)` pairs strictly increasing in day.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSet {
    entries: Vec<(usize, f64)>,
}

impl ObservationSet {
    pub fn new(entries: Vec<(usize, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::input("observation set is empty"));
        }
        for (i, &(day, value)) in entries.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::input(format!("observation on day {day} is not finite")));
            }
            if i > 0 && entries[i - 1].0 >= day {
                return Err(Error::input(format!(
                    "observation days must be strictly increasing (day {day} after day {})",
                    entries[i - 1].0
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn last_day(&self) -> usize {
        self.entries.last().map_or(0, |e| e.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.1)
    }

    pub fn get(&self, day: usize) -> Option<f64> {
        self.entries.binary_search_by_key(&day, |e| e.0).ok().map(|i| self.entries[i].1)
    }

    /// Smallest and largest observed value.
    pub fn range(&self) -> (f64, f64) {
        self.values().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    /// Picks the trajectory values on observed days.
    pub fn sample(&self, trajectory: &[f64]) -> Result<Vec<f64>> {
        if self.last_day() >= trajectory.len() {
            return Err(Error::input(format!(
                "observation day {} is beyond the predicted horizon {}",
                self.last_day(),
                trajectory.len()
            )));
        }
        Ok(self.entries.iter().map(|&(d, _)| trajectory[d]).collect())
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.entries.iter().map(|&(d, v)| (d, v * factor)).collect())
    }
}

/// Sum of squared residuals between a trajectory and the observations.
pub fn sse_from_trajectory(trajectory: &[f64], obs: &ObservationSet) -> Result<f64> {
    let predicted = obs.sample(trajectory)?;
    Ok(predicted.iter().zip(obs.values()).map(|(p, o)| (p - o) * (p - o)).sum())
}

/// Least-squares objective `sum (p_model(day) - p_obs)^2`.
pub fn sse_objective(
    params: &PerformanceParams,
    w: &LoadSeries,
    obs: &ObservationSet,
) -> Result<f64> {
    let horizon = obs.last_day() + 1;
    if horizon > w.len() {
        return Err(Error::input(format!(
            "observation day {} is outside the load series (length {})",
            obs.last_day(),
            w.len()
        )));
    }
    let p = eval_performance(w, params, horizon)?;
    sse_from_trajectory(&p, obs)
}

/// Coefficient of determination `1 - SSE/SST`, with SST taken about the
/// observation mean. `predicted` is aligned with the observation entries.
pub fn r_squared(predicted: &[f64], obs: &ObservationSet) -> Result<f64> {
    if predicted.len() != obs.len() {
        return Err(Error::input(format!(
            "{} predictions for {} observations",
            predicted.len(),
            obs.len()
        )));
    }
    if obs.len() < 2 {
        return Err(Error::UndefinedMetric("R² needs at least 2 observations".into()));
    }
    let mean = obs.values().sum::<f64>() / obs.len() as f64;
    let sst: f64 = obs.values().map(|o| (o - mean) * (o - mean)).sum();
    if sst == 0.0 {
        return Err(Error::UndefinedMetric("observations have zero variance".into()));
    }
    let sse: f64 = predicted.iter().zip(obs.values()).map(|(p, o)| (p - o) * (p - o)).sum();
    Ok(1.0 - sse / sst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SingleDelayParams;

    fn obs123() -> ObservationSet {
        ObservationSet::new(vec![(1, 1.0), (2, 2.0), (3, 3.0)]).unwrap()
    }

    #[test]
    fn r_squared_reference_cases() {
        assert_eq!(r_squared(&[1.0, 2.0, 3.0], &obs123()).unwrap(), 1.0);
        assert_eq!(r_squared(&[2.0, 2.0, 2.0], &obs123()).unwrap(), 0.0);
        assert_eq!(r_squared(&[1.0, 2.0, 4.0], &obs123()).unwrap(), 0.5);
    }

    #[test]
    fn r_squared_undefined_cases() {
        let flat = ObservationSet::new(vec![(1, 5.0), (4, 5.0)]).unwrap();
        assert!(matches!(r_squared(&[5.0, 5.0], &flat), Err(Error::UndefinedMetric(_))));
        let single = ObservationSet::new(vec![(1, 5.0)]).unwrap();
        assert!(matches!(r_squared(&[5.0], &single), Err(Error::UndefinedMetric(_))));
        assert!(r_squared(&[1.0], &obs123()).is_err());
    }

    #[test]
    fn observation_set_validation() {
        assert!(ObservationSet::new(vec![]).is_err());
        assert!(ObservationSet::new(vec![(3, 1.0), (3, 2.0)]).is_err());
        assert!(ObservationSet::new(vec![(3, 1.0), (1, 2.0)]).is_err());
        assert!(ObservationSet::new(vec![(3, f64::NAN)]).is_err());
        assert_eq!(obs123().get(2), Some(2.0));
        assert_eq!(obs123().get(5), None);
    }

    #[test]
    fn sse_single_offset() {
        let w = LoadSeries::zeros(5);
        let s = SingleDelayParams::new(10.0, 5.0).unwrap();
        let p = PerformanceParams::new(100.0, 1.0, 1.0, s, s).unwrap();
        let obs = ObservationSet::new(vec![(3, 102.0)]).unwrap();
        assert_eq!(sse_objective(&p, &w, &obs).unwrap(), 4.0);
        let late = ObservationSet::new(vec![(5, 100.0)]).unwrap();
        assert!(sse_objective(&p, &w, &late).is_err());
    }
}
