//! File formats: CSV inputs and outputs, TOML configuration and parameter
//! documents, SVG charts.

mod chart;
mod config;
mod csv;
mod params_doc;

pub use self::csv::{
    emit_load_csv, emit_performance_csv, emit_prediction_csv, emit_state_csv, parse_load_csv, parse_performance_csv,
    parse_prediction_csv, PredictionRow, PredictionTable, MAX_DAY,
};
pub use chart::{load_chart_options, render_fit_chart, render_load_chart, ChartOptions, PlotArea};
pub use config::{load_config, ChartConfig, RunConfig};
pub use params_doc::{emit_params_toml, parse_params_toml, Diagnostics};
