//! A finite memory kernel expressed as a three-delay model.
//!
//! ```text
//! cargo run --example three_delay_kernel
//! ```

use ffdelay::model::{
    eval_kernel_recursive, eval_three_delay_recursive, kernel_to_three_delay, KernelParams,
};
use ffdelay::synthetic::block_periodized_load;

fn main() -> ffdelay::Result<()> {
    let w = block_periodized_load(112);
    for tau5 in [-0.5, 0.0, 0.3] {
        let kernel = KernelParams::new(25.0, tau5)?;
        let mapping = kernel_to_three_delay(&kernel)?;
        let lags = mapping.params.lags().map(|l| l.tau());
        let a = eval_kernel_recursive(&w, &kernel, w.len())?;
        let b = eval_three_delay_recursive(&w, &mapping.params, w.len())?;
        let gap = a.values().iter().zip(b.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        println!("tau5 = {tau5:>4}: lags {lags:?}, max difference {gap:.1e}");
        if mapping.sign_warning {
            println!("             negative lag constants: outside the delay model's physical range");
        }
    }
    Ok(())
}
