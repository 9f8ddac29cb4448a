//! Discrete-time fitness-fatigue models.

mod eval;
mod params;
mod performance;
mod series;

pub use eval::{
    eval_classical, eval_kernel_recursive, eval_single_delay_convolution,
    eval_single_delay_recursive, eval_three_delay_convolution, eval_three_delay_recursive,
    kernel_to_three_delay, KernelMapping, StateParams,
};
pub use params::{FirstOrderParams, KernelParams, LagConstant, SingleDelayParams, ThreeDelayParams};
pub use performance::{eval_performance, PerformanceParams};
pub use series::{LoadSeries, StateSeries, Variant};
