//! Fitness-fatigue impulse-response models with delayed feedback.
//!
//! The crate evaluates four state equations on a one-day grid (classical
//! first order, one-day delay, three delays, and a finite memory kernel),
//! combines fitness and fatigue states into predicted performance, fits the
//! parameters to sparse observations by least squares, and renders CSV/SVG
//! output. [`continuum`] integrates the delay equations on a finer grid and
//! serves as an independent check of the day-grid recursions.

pub mod cli;
pub mod continuum;
pub mod error;
pub mod estimation;
pub mod io;
pub mod model;
pub mod synthetic;

pub use error::{Error, Result};
