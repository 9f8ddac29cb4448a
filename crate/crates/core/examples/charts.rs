//! Writes the fit chart and the load chart for the reference athlete.
//!
//! ```text
//! cargo run --example charts -- [out_dir]
//! ```

use std::path::PathBuf;

use ffdelay::io::{load_chart_options, render_fit_chart, render_load_chart, ChartOptions, PredictionTable};
use ffdelay::model::eval_performance;
use ffdelay::synthetic::{block_periodized_load, observation_days, observe, reference_params};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args_os().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&out)?;

    let w = block_periodized_load(168);
    let params = reference_params();
    let predicted = eval_performance(&w, &params, w.len())?;
    let obs = observe(&params, &w, &observation_days(7, 7, 23, w.len()));
    let table = PredictionTable::new(&w, &predicted, Some(&obs))?;

    let fit_options = ChartOptions { title: "Reference athlete".into(), ..ChartOptions::default() };
    let fit_path = out.join("fit_chart.svg");
    std::fs::write(&fit_path, render_fit_chart(&table, &fit_options)?)?;
    let load_path = out.join("load_chart.svg");
    std::fs::write(&load_path, render_load_chart(&w, &load_chart_options(900.0, 300.0, "Training load"))?)?;
    println!("wrote {} and {}", fit_path.display(), load_path.display());
    Ok(())
}
