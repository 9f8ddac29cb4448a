//! Reproducible training blocks and a reference athlete, for demos and tests.

use crate::estimation::ObservationSet;
use crate::model::{eval_performance, LoadSeries, PerformanceParams, SingleDelayParams};

/// Four-week mesocycles: three loading weeks at 60, 80 and 100 units per
/// session with one rest day per week, followed by a rest week.
pub fn block_periodized_load(days: usize) -> LoadSeries {
    let values = (0..days)
        .map(|d| {
            if d == 0 {
                return 0.0;
            }
            let week = (d - 1) / 7;
            if week % 4 == 3 || d % 7 == 0 {
                0.0
            } else {
                60.0 + 20.0 * (week % 4) as f64
            }
        })
        .collect();
    LoadSeries::new(values).expect("generated loads are valid")
}

/// `days` of rest, then `length` consecutive days at `load`, then rest.
pub fn single_block(days: usize, start: usize, length: usize, load: f64) -> LoadSeries {
    let start = start.max(1);
    let values = (0..days).map(|d| if d >= start && d < start + length { load } else { 0.0 }).collect();
    LoadSeries::new(values).expect("generated loads are valid")
}

/// Baseline 500, k1 = 0.10, k2 = 0.12, fitness (45, 20) and fatigue (15, 10) days.
pub fn reference_params() -> PerformanceParams {
    PerformanceParams::new(
        500.0,
        0.10,
        0.12,
        SingleDelayParams::new(45.0, 20.0).expect("valid"),
        SingleDelayParams::new(15.0, 10.0).expect("valid"),
    )
    .expect("valid")
}

/// Every `every`-th day starting at `first`, at most `count` of them.
pub fn observation_days(first: usize, every: usize, count: usize, horizon: usize) -> Vec<usize> {
    (0..count).map(|i| first + i * every).take_while(|&d| d < horizon).collect()
}

/// Noiseless observations of `params` on the given days.
pub fn observe(params: &PerformanceParams, w: &LoadSeries, days: &[usize]) -> ObservationSet {
    let p = eval_performance(w, params, w.len()).expect("days within load series");
    ObservationSet::new(days.iter().map(|&d| (d, p[d])).collect()).expect("strictly increasing days")
}
