//! The response of the classical and single-delay states to one training
//! session, evaluated with both the step recursion and the convolution sum.
//!
//! ```text
//! cargo run --example classical_vs_delay
//! ```

use ffdelay::model::{
    eval_classical, eval_single_delay_convolution, eval_single_delay_recursive, FirstOrderParams,
    LoadSeries, SingleDelayParams,
};

fn main() -> ffdelay::Result<()> {
    let mut load = vec![0.0; 31];
    load[1] = 100.0;
    let w = LoadSeries::new(load)?;

    let classical = eval_classical(&w, &FirstOrderParams::new(10.0)?, w.len())?;
    let delay = SingleDelayParams::new(10.0, 4.0)?;
    let recursive = eval_single_delay_recursive(&w, &delay, w.len())?;
    let convolution = eval_single_delay_convolution(&w, &delay, w.len())?;

    println!("day  classical  single-delay  |rec - conv|");
    for n in 0..w.len() {
        let (r, c) = (recursive.values()[n], convolution.values()[n]);
        println!("{n:>3}  {:>9.4}  {r:>12.4}  {:.1e}", classical.values()[n], (r - c).abs());
    }
    // The lag feeds yesterday's state back with a negative sign, so the
    // delayed response undershoots zero before settling.
    let undershoot = recursive.values().iter().copied().fold(f64::INFINITY, f64::min);
    println!("lowest single-delay state: {undershoot:.4}");
    Ok(())
}
