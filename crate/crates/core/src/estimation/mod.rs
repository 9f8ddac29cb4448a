//! Least-squares estimation of the performance model.

mod bounds;
mod fit;
mod metrics;
mod nelder_mead;

pub use bounds::{within_bounds, Interval, Layout, ParamBounds, Slot};
pub use fit::{fit, fit_variant, predict, FitConfig, FitResult, StartSummary};
pub use metrics::{r_squared, sse_from_trajectory, sse_objective, ObservationSet};
pub use nelder_mead::{nelder_mead, Minimum, SimplexOptions};
