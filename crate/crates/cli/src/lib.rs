// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line front end: file loading, run reports, SVG plots and timing.

#![forbid(unsafe_code)]

pub mod app;
pub mod io;
pub mod report;
pub mod runner;
pub mod svg;

pub use report::{RunReport, Timing};
pub use runner::{bench_scaling, run_once, run_repeated, Algorithm, Outcome, ScalingRow};
