// SPDX-License-Identifier: MIT OR Apache-2.0

//! Comparison methods that need a prescribed number of breakpoints.

pub mod bottom_up;
pub mod ggs;
pub mod linalg;

pub use bottom_up::{affine_fit_sse, bu_segment};
pub use ggs::{ggs_objective, ggs_segment, segment_stats, GgsModel, SegmentStats, DEFAULT_LAMBDA};
pub use linalg::{inverse_trace_spd, logdet_spd, Cholesky, SymMatrix};
