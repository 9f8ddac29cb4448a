//! Refines the time grid of the single-delay equation and reports how fast
//! the day values settle. At one substep per day the integrator reproduces
//! the day recursion.
//!
//! ```text
//! cargo run --example continuum_convergence
//! ```

use ffdelay::continuum::{convergence_probe, halving_ratios, integrate_single_delay, StepLoad};
use ffdelay::model::{eval_single_delay_recursive, LoadSeries, SingleDelayParams};

fn main() -> ffdelay::Result<()> {
    let load = (0..60).map(|d| if d == 0 { 0.0 } else { 50.0 + 40.0 * (d as f64 / 9.0).sin() }).collect();
    let w = LoadSeries::new(load)?;
    let params = SingleDelayParams::new(20.0, 8.0)?;

    let grid = integrate_single_delay(StepLoad(&w), &params, 60, 1)?.day_values();
    let day = eval_single_delay_recursive(&w, &params, 60)?;
    let gap = grid.iter().zip(day.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("one substep per day vs day recursion: max difference {gap:.1e}");

    let probe = convergence_probe(StepLoad(&w), &params, 60, &[1, 2, 4, 8, 16, 32, 1024])?;
    for point in &probe {
        println!("m = {:>4}: distance to m = 1024 is {:.3e}", point.substeps, point.difference);
    }
    println!("halving ratios: {:?}", halving_ratios(&probe));
    Ok(())
}
