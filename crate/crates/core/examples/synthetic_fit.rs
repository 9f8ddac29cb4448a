//! Recovers the reference athlete from 20 noiseless performance tests, then
//! refits after adding Gaussian noise.
//!
//! ```text
//! cargo run --release --example synthetic_fit
//! ```

use ffdelay::estimation::{fit, FitConfig, ObservationSet, ParamBounds};
use ffdelay::synthetic::{block_periodized_load, observation_days, observe, reference_params};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn main() -> ffdelay::Result<()> {
    let w = block_periodized_load(120);
    let obs = observe(&reference_params(), &w, &observation_days(5, 6, 20, 120));
    let config = FitConfig::default();

    let clean = fit(&w, &obs, &ParamBounds::default(), &config)?;
    println!("truth:     {:?}", reference_params());
    println!("recovered: {:?}", clean.params);
    println!("SSE {:.3e}, R² {:?}, {} of {} starts converged", clean.sse, clean.r2, clean.starts_converged, config.starts);

    let (lo, hi) = obs.range();
    let noise = Normal::new(0.0, 0.01 * (hi - lo)).expect("positive spread");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let noisy = ObservationSet::new(obs.entries().iter().map(|&(d, v)| (d, v + noise.sample(&mut rng))).collect())?;
    let rough = fit(&w, &noisy, &ParamBounds::default(), &config)?;
    println!("with noise: SSE {:.3}, R² {:?}", rough.sse, rough.r2);
    println!("            {:?}", rough.params);
    Ok(())
}
