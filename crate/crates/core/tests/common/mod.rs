#![allow(dead_code)]

use ffdelay::model::LoadSeries;
use proptest::prelude::*;

/// Normwise relative agreement: `max|a - b| <= tol * max(|a|_inf, |b|_inf)`.
/// Two all-zero vectors agree.
pub fn rel_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let scale = a.iter().chain(b).fold(0.0_f64, |m, v| m.max(v.abs()));
    let diff = a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
    diff <= tol * scale
}

pub fn rel_error(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().chain(b).fold(0.0_f64, |m, v| m.max(v.abs()));
    let diff = a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
    if scale == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

/// Loads with about a third of the days at rest and `w(0) = 0`.
pub fn load_strategy(max_len: usize) -> impl Strategy<Value = LoadSeries> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 2 => 0.0..200.0_f64], 1..=max_len).prop_map(
        |mut v| {
            v[0] = 0.0;
            LoadSeries::new(v).unwrap()
        },
    )
}

pub fn decay_strategy() -> impl Strategy<Value = f64> {
    1.0..500.0_f64
}

/// A lag time constant in days, or `inf` for no lag term.
pub fn lag_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(f64::INFINITY), 4 => 1.0..1000.0_f64]
}
