//! Writes the bundled synthetic dataset: 120 days of block-periodized load,
//! 20 noiseless performance tests of the reference athlete, and a run config.
//!
//! ```text
//! cargo run --example synthetic_dataset -- [out_dir]
//! ```

use std::path::PathBuf;

use ffdelay::io::{emit_load_csv, emit_performance_csv};
use ffdelay::synthetic::{block_periodized_load, observation_days, observe, reference_params};

const CONFIG: &str = r#"variant = "single_delay"

[fit]
starts = 20
seed = 0
"#;

fn main() -> std::io::Result<()> {
    let out = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/synthetic"));
    std::fs::create_dir_all(&out)?;

    let w = block_periodized_load(120);
    let obs = observe(&reference_params(), &w, &observation_days(5, 6, 20, w.len()));
    std::fs::write(out.join("load.csv"), emit_load_csv(&w))?;
    std::fs::write(out.join("perf.csv"), emit_performance_csv(&obs))?;
    std::fs::write(out.join("config.toml"), CONFIG)?;
    println!("wrote {} load days and {} observations to {}", w.len(), obs.len(), out.display());
    Ok(())
}
