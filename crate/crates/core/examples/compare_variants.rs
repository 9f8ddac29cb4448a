//! Fits all four state equations to the same noisy observations. Richer
//! variants are warm-started from the fits of the variants they contain.
//!
//! ```text
//! cargo run --release --example compare_variants
//! ```

use ffdelay::cli::{compare_variants, emit_comparison_csv};
use ffdelay::estimation::ObservationSet;
use ffdelay::io::load_config;
use ffdelay::synthetic::{block_periodized_load, observation_days, observe, reference_params};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn main() -> ffdelay::Result<()> {
    let w = block_periodized_load(120);
    let clean = observe(&reference_params(), &w, &observation_days(3, 4, 30, 120));
    let noise = Normal::new(0.0, 0.5).expect("positive spread");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let obs = ObservationSet::new(clean.entries().iter().map(|&(d, v)| (d, v + noise.sample(&mut rng))).collect())?;

    let config = load_config("variant = \"single_delay\"\n[fit]\nstarts = 12\nseed = 3\n")?;
    let rows = compare_variants(&w, &obs, &config)?;
    print!("{}", emit_comparison_csv(&rows, &obs));
    Ok(())
}
