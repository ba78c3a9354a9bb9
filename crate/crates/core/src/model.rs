// SPDX-License-Identifier: MIT OR Apache-2.0

//! Shared data types and their invariants.

use crate::error::{Error, Result};

/// A validated multivariate series: `n_x` channels of identical length `T+1`.
///
/// Indices are ordinals `0..=T`; any timestamps an input file carried are not
/// part of this type.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiSeries {
    channels: Vec<Vec<f64>>,
}

impl MultiSeries {
    pub fn new(channels: Vec<Vec<f64>>) -> Result<Self> {
        let first = channels.first().ok_or(Error::Empty)?;
        let len = first.len();
        if len == 0 {
            return Err(Error::Empty);
        }
        for (c, ch) in channels.iter().enumerate() {
            if ch.len() != len {
                return Err(Error::RaggedChannels {
                    channel: c,
                    expected: len,
                    found: ch.len(),
                });
            }
        }
        for (c, ch) in channels.iter().enumerate() {
            if let Some(index) = ch.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { channel: c, index });
            }
        }
        if len < 2 {
            return Err(Error::TooShort(format!(
                "{len} point(s) per channel, at least 2 required"
            )));
        }
        Ok(Self { channels })
    }

    /// Builds a single-channel series.
    pub fn univariate(values: Vec<f64>) -> Result<Self> {
        Self::new(vec![values])
    }

    pub fn n_channels(&self) -> usize {
        self.channels.len()
    }

    /// Number of points per channel, `T+1`.
    pub fn len(&self) -> usize {
        self.channels[0].len()
    }

    /// Always false; a validated series holds at least two points.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The last index `T`.
    pub fn horizon(&self) -> usize {
        self.len() - 1
    }

    pub fn channel(&self, i: usize) -> &[f64] {
        &self.channels[i]
    }

    pub fn channels(&self) -> &[Vec<f64>] {
        &self.channels
    }

    pub fn into_channels(self) -> Vec<Vec<f64>> {
        self.channels
    }

    /// The same series read from `T` down to `0`.
    pub fn reversed(&self) -> Self {
        let channels = self
            .channels
            .iter()
            .map(|ch| ch.iter().rev().copied().collect())
            .collect();
        Self { channels }
    }

    /// Value of every channel at index `t`.
    pub fn row(&self, t: usize) -> Vec<f64> {
        self.channels.iter().map(|ch| ch[t]).collect()
    }
}

/// Validates raw channel data without consuming it.
pub fn validate_series(raw: &[Vec<f64>]) -> Result<MultiSeries> {
    MultiSeries::new(raw.to_vec())
}

/// Hyperparameters of the trading-inspired segmentation.
#[derive(Debug, Clone, PartialEq)]
pub struct AptsConfig {
    pub eps_min: f64,
    pub eps_max: f64,
    pub gamma_mult: f64,
    /// Index distance under which a forward and a reverse breakpoint are
    /// averaged. `None` means `max(0.01 T, 2)`.
    pub gamma_close: Option<f64>,
    /// Minimum value change kept by the plateau pre-filter; 0 disables it.
    pub gamma_plat: f64,
    pub k_max: usize,
    /// Channel weights; `None` means uniform.
    pub weights: Option<Vec<f64>>,
}

impl Default for AptsConfig {
    fn default() -> Self {
        Self {
            eps_min: 0.01,
            eps_max: 1.0,
            gamma_mult: 2.0,
            gamma_close: None,
            gamma_plat: 0.0,
            k_max: 10,
            weights: None,
        }
    }
}

impl AptsConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.eps_min.is_finite() && self.eps_min > 0.0) {
            return bad(format!("eps_min must be positive, got {}", self.eps_min));
        }
        if self.eps_max.is_nan() || self.eps_min >= self.eps_max {
            return bad(format!(
                "eps_min ({}) must be below eps_max ({})",
                self.eps_min, self.eps_max
            ));
        }
        if !(self.gamma_mult.is_finite() && self.gamma_mult > 1.0) {
            return bad(format!("gamma_mult must exceed 1, got {}", self.gamma_mult));
        }
        if let Some(g) = self.gamma_close {
            if !(g.is_finite() && g >= 0.0) {
                return bad(format!("gamma_close must be nonnegative, got {g}"));
            }
        }
        if !(self.gamma_plat.is_finite() && self.gamma_plat >= 0.0) {
            return bad(format!(
                "gamma_plat must be nonnegative, got {}",
                self.gamma_plat
            ));
        }
        if self.k_max == 0 {
            return bad("k_max must be at least 1".into());
        }
        if let Some(w) = &self.weights {
            if w.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
                return bad("every weight must lie in [0, 1]".into());
            }
            let sum: f64 = w.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return bad(format!("weights must sum to 1, got {sum}"));
            }
        }
        Ok(())
    }

    /// Resolved merge distance for a series with last index `horizon`.
    pub fn gamma_close_for(&self, horizon: usize) -> f64 {
        self.gamma_close
            .unwrap_or_else(|| (0.01 * horizon as f64).max(2.0))
    }

    /// Resolved channel weights for `n_x` channels.
    pub fn weights_for(&self, n_x: usize) -> Result<Vec<f64>> {
        match &self.weights {
            Some(w) if w.len() != n_x => Err(Error::WeightMismatch {
                expected: n_x,
                found: w.len(),
            }),
            Some(w) => Ok(w.clone()),
            None => Ok(vec![1.0 / n_x as f64; n_x]),
        }
    }
}

/// Virtual portfolio position: fully in cash or fully in the surrogate stock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Position {
    Cash,
    Stock,
}

impl Position {
    /// `-1` for cash, `+1` for stock.
    pub fn sign(self) -> i8 {
        match self {
            Position::Cash => -1,
            Position::Stock => 1,
        }
    }

    pub fn from_sign(sign: i8) -> Option<Self> {
        match sign {
            -1 => Some(Position::Cash),
            1 => Some(Position::Stock),
            _ => None,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Position::Cash => Position::Stock,
            Position::Stock => Position::Cash,
        }
    }
}

/// Counts indices `t` with `values[t + 1] != values[t]`.
pub fn count_switches(values: &[Position]) -> usize {
    values.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Per-channel optimal position sequence for one transaction cost level.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchSignal {
    pub values: Vec<Position>,
    pub epsilon: f64,
    pub switch_count: usize,
}

impl SwitchSignal {
    pub fn new(values: Vec<Position>, epsilon: f64) -> Self {
        let switch_count = count_switches(&values);
        Self {
            values,
            epsilon,
            switch_count,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn signs(&self) -> Vec<i8> {
        self.values.iter().map(|p| p.sign()).collect()
    }
}

/// Which pass produced a segmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Forward,
    Reverse,
    Merged,
}

/// Strictly increasing breakpoints inside `(0, T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segmentation {
    breakpoints: Vec<usize>,
    horizon: usize,
    source: Source,
}

impl Segmentation {
    pub fn new(breakpoints: Vec<usize>, horizon: usize, source: Source) -> Result<Self> {
        if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBreakpoints(format!(
                "not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        if let Some(&b) = breakpoints.iter().find(|&&b| b == 0 || b >= horizon) {
            return Err(Error::InvalidBreakpoints(format!(
                "{b} outside the open interval (0, {horizon})"
            )));
        }
        Ok(Self {
            breakpoints,
            horizon,
            source,
        })
    }

    pub fn empty(horizon: usize, source: Source) -> Self {
        Self {
            breakpoints: Vec::new(),
            horizon,
            source,
        }
    }

    pub fn breakpoints(&self) -> &[usize] {
        &self.breakpoints
    }

    /// The last series index `T`.
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// Half-open `[start, end)` index ranges covering `0..=T`.
    pub fn segments(&self) -> Vec<(usize, usize)> {
        let mut bounds = Vec::with_capacity(self.breakpoints.len() + 2);
        bounds.push(0);
        bounds.extend_from_slice(&self.breakpoints);
        bounds.push(self.horizon + 1);
        bounds.windows(2).map(|w| (w[0], w[1])).collect()
    }
}
