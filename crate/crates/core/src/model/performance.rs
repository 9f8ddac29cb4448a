use super::eval::StateParams;
use super::params::SingleDelayParams;
use super::series::{LoadSeries, Variant};
use crate::error::{Error, Result};

/// Parameters of `p(n) = p0 + k1 g(n) - k2 h(n)`.
///
/// `fitness` drives `g` and `fatigue` drives `h`; both use the same state
/// equation. The default model uses single-delay states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerformanceParams {
    p0: f64,
    k1: f64,
    k2: f64,
    fitness: StateParams,
    fatigue: StateParams,
}

impl PerformanceParams {
    pub fn new(
        p0: f64,
        k1: f64,
        k2: f64,
        fitness: SingleDelayParams,
        fatigue: SingleDelayParams,
    ) -> Result<Self> {
        Self::with_states(
            p0,
            k1,
            k2,
            StateParams::SingleDelay(fitness),
            StateParams::SingleDelay(fatigue),
        )
    }

    pub fn with_states(
        p0: f64,
        k1: f64,
        k2: f64,
        fitness: StateParams,
        fatigue: StateParams,
    ) -> Result<Self> {
        if !p0.is_finite() {
            return Err(Error::param(format!("p0 must be finite, got {p0}")));
        }
        for (name, k) in [("k1", k1), ("k2", k2)] {
            if !(k.is_finite() && k > 0.0) {
                return Err(Error::param(format!("{name} must be positive and finite, got {k}")));
            }
        }
        if fitness.variant() != fatigue.variant() {
            return Err(Error::param(format!(
                "fitness ({}) and fatigue ({}) states must use the same variant",
                fitness.variant(),
                fatigue.variant()
            )));
        }
        Ok(Self { p0, k1, k2, fitness, fatigue })
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    pub fn fitness(&self) -> &StateParams {
        &self.fitness
    }

    pub fn fatigue(&self) -> &StateParams {
        &self.fatigue
    }

    pub fn variant(&self) -> Variant {
        self.fitness.variant()
    }

    /// Same model expressed in a variant that nests this one, if any.
    pub fn embed_in(&self, target: Variant) -> Option<Self> {
        Some(Self {
            fitness: self.fitness.embed_in(target)?,
            fatigue: self.fatigue.embed_in(target)?,
            ..*self
        })
    }
}

/// Predicted performance `p(0..horizon)`.
pub fn eval_performance(
    w: &LoadSeries,
    params: &PerformanceParams,
    horizon: usize,
) -> Result<Vec<f64>> {
    let g = params.fitness.evaluate(w, horizon)?;
    let h = params.fatigue.evaluate(w, horizon)?;
    Ok(g.values()
        .iter()
        .zip(h.values())
        .map(|(g, h)| params.p0 + (params.k1 * g - params.k2 * h))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::eval_single_delay_recursive;

    #[test]
    fn symmetric_gains_cancel() {
        let w = LoadSeries::new(vec![0.0, 10.0, 50.0, 0.0, 20.0]).unwrap();
        let s = SingleDelayParams::new(7.0, 3.0).unwrap();
        let p = PerformanceParams::new(320.0, 0.4, 0.4, s, s).unwrap();
        assert!(eval_performance(&w, &p, 5).unwrap().iter().all(|&v| v == 320.0));
    }

    #[test]
    fn zero_load_is_baseline() {
        let w = LoadSeries::zeros(30);
        let p = PerformanceParams::new(
            500.0,
            0.1,
            0.12,
            SingleDelayParams::new(45.0, 20.0).unwrap(),
            SingleDelayParams::new(15.0, 10.0).unwrap(),
        )
        .unwrap();
        assert!(eval_performance(&w, &p, 30).unwrap().iter().all(|&v| v == 500.0));
    }

    #[test]
    fn composes_state_trajectories() {
        let mut load = vec![0.0; 40];
        load[1..15].fill(100.0);
        let w = LoadSeries::new(load).unwrap();
        let fit = SingleDelayParams::new(45.0, 20.0).unwrap();
        let fat = SingleDelayParams::new(15.0, 10.0).unwrap();
        let p = PerformanceParams::new(500.0, 0.10, 0.12, fit, fat).unwrap();
        let perf = eval_performance(&w, &p, 40).unwrap();
        let g = eval_single_delay_recursive(&w, &fit, 40).unwrap();
        let h = eval_single_delay_recursive(&w, &fat, 40).unwrap();
        for ((p, g), h) in perf.iter().zip(g.values()).zip(h.values()) {
            let want = 500.0 + 0.10 * g - 0.12 * h;
            assert!((p - want).abs() < 1e-12);
        }
        assert_eq!(perf[0], 500.0);
        assert!(perf[1..15].iter().any(|&v| v < 500.0));
        assert!(perf[15..].iter().any(|&v| v > 500.0));
    }

    #[test]
    fn invalid_gains_and_mixed_variants() {
        let s = SingleDelayParams::new(7.0, 3.0).unwrap();
        assert!(PerformanceParams::new(1.0, 0.0, 1.0, s, s).is_err());
        assert!(PerformanceParams::new(f64::NAN, 1.0, 1.0, s, s).is_err());
        let c = StateParams::Classical(crate::model::FirstOrderParams::new(3.0).unwrap());
        assert!(PerformanceParams::with_states(1.0, 1.0, 1.0, c, StateParams::SingleDelay(s)).is_err());
    }
}
