// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has no channels or no points")]
    Empty,
    #[error("channel {channel} has {found} points, expected {expected}")]
    RaggedChannels {
        channel: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value in channel {channel} at index {index}")]
    NonFinite { channel: usize, index: usize },
    #[error("series too short: {0}")]
    TooShort(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("price at index {index} is not positive ({value})")]
    NonPositivePrice { index: usize, value: f64 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{found} weights supplied for {expected} channels")]
    WeightMismatch { expected: usize, found: usize },
    #[error("matrix is not positive definite (pivot {pivot})")]
    NotPositiveDefinite { pivot: usize },
    #[error("invalid breakpoints: {0}")]
    InvalidBreakpoints(String),
}
