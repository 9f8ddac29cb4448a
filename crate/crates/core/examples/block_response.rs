//! Performance of the reference athlete over a 14-day block at load 100
//! followed by rest: the dip below baseline while loading and the rebound
//! above it afterwards.
//!
//! ```text
//! cargo run --example block_response
//! ```

use ffdelay::model::eval_performance;
use ffdelay::synthetic::{reference_params, single_block};

fn main() -> ffdelay::Result<()> {
    let w = single_block(80, 1, 14, 100.0);
    let params = reference_params();
    let p = eval_performance(&w, &params, w.len())?;
    println!("day  load   p(n) - p0");
    for (day, (load, perf)) in w.values().iter().zip(&p).enumerate() {
        let excess = perf - params.p0();
        let bar = "#".repeat((excess.abs() / 2.0).round() as usize);
        let sign = if excess < 0.0 { '-' } else { '+' };
        println!("{day:>3}  {load:>4}  {excess:>9.3} {sign}{bar}");
    }
    Ok(())
}
