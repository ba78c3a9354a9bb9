// SPDX-License-Identifier: MIT OR Apache-2.0

//! Greedy Gaussian segmentation.
//!
//! Each segment is modeled as i.i.d. Gaussian with its own mean and a
//! covariance regularized by `lambda / len` on the diagonal. Breakpoints are
//! added one at a time at the best split, and after every insertion each
//! breakpoint is moved within its neighbors until no single move helps.

use super::linalg::{Cholesky, SymMatrix};
use crate::error::{Error, Result};
use crate::model::{MultiSeries, Segmentation, Source};

/// Regularization used when none is given.
pub const DEFAULT_LAMBDA: f64 = 0.1;

/// Above this many prefix-sum entries, segment statistics are summed
/// directly instead.
const PREFIX_LIMIT: usize = 1 << 24;

/// Hyperparameters of the Gaussian baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GgsModel {
    pub lambda: f64,
    pub k_target: usize,
}

/// Empirical mean and covariance of one segment.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentStats {
    pub mean: Vec<f64>,
    pub covariance: SymMatrix,
}

struct Stats<'a> {
    series: &'a MultiSeries,
    n: usize,
    center: Vec<f64>,
    /// prefix sums of centered rows and outer products, when affordable
    s1: Vec<f64>,
    s2: Vec<f64>,
}

impl<'a> Stats<'a> {
    fn new(series: &'a MultiSeries) -> Self {
        let n = series.n_channels();
        let len = series.len();
        let center: Vec<f64> = series
            .channels()
            .iter()
            .map(|ch| ch.iter().sum::<f64>() / len as f64)
            .collect();
        let mut stats = Self {
            series,
            n,
            center,
            s1: Vec::new(),
            s2: Vec::new(),
        };
        if (len + 1) * n * n <= PREFIX_LIMIT {
            stats.s1 = vec![0.0; (len + 1) * n];
            stats.s2 = vec![0.0; (len + 1) * n * n];
            let mut row = vec![0.0; n];
            for t in 0..len {
                for (i, r) in row.iter_mut().enumerate() {
                    *r = series.channel(i)[t] - stats.center[i];
                }
                for i in 0..n {
                    stats.s1[(t + 1) * n + i] = stats.s1[t * n + i] + row[i];
                    for j in 0..=i {
                        let k = i * n + j;
                        stats.s2[(t + 1) * n * n + k] = stats.s2[t * n * n + k] + row[i] * row[j];
                    }
                }
            }
        }
        stats
    }

    /// Mean (centered) and covariance of rows `start..end`.
    fn moments(&self, start: usize, end: usize) -> (Vec<f64>, SymMatrix) {
        let n = self.n;
        let m = (end - start) as f64;
        let mut mean = vec![0.0; n];
        let mut cov = SymMatrix::zeros(n);
        if !self.s1.is_empty() {
            for (i, mu) in mean.iter_mut().enumerate() {
                *mu = (self.s1[end * n + i] - self.s1[start * n + i]) / m;
            }
            for i in 0..n {
                for j in 0..=i {
                    let k = i * n + j;
                    let sxy = (self.s2[end * n * n + k] - self.s2[start * n * n + k]) / m;
                    cov[(i, j)] = sxy - mean[i] * mean[j];
                }
            }
        } else {
            for (i, mu) in mean.iter_mut().enumerate() {
                let ch = &self.series.channel(i)[start..end];
                *mu = ch.iter().map(|v| v - self.center[i]).sum::<f64>() / m;
            }
            for i in 0..n {
                let ci = &self.series.channel(i)[start..end];
                for j in 0..=i {
                    let cj = &self.series.channel(j)[start..end];
                    let s: f64 = ci
                        .iter()
                        .zip(cj)
                        .map(|(a, b)| {
                            (a - self.center[i] - mean[i]) * (b - self.center[j] - mean[j])
                        })
                        .sum();
                    cov[(i, j)] = s / m;
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                cov[(j, i)] = cov[(i, j)];
            }
        }
        (mean, cov)
    }

    /// Regularized log-likelihood term of rows `start..end`.
    fn objective(&self, start: usize, end: usize, lambda: f64) -> Result<f64> {
        let m = (end - start) as f64;
        let (_, mut a) = self.moments(start, end);
        a.add_diagonal(lambda / m);
        let chol = Cholesky::new(&a)?;
        Ok(-0.5 * m * chol.log_det() - lambda * chol.inverse_trace())
    }
}

fn bounds(breakpoints: &[usize], len: usize) -> Vec<usize> {
    let mut b = Vec::with_capacity(breakpoints.len() + 2);
    b.push(0);
    b.extend_from_slice(breakpoints);
    b.push(len);
    b
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "lambda must be positive, got {lambda}"
        )))
    }
}

/// Total regularized log-likelihood of the segmentation given by
/// `breakpoints` (segment start indices, strictly inside `(0, T+1)`).
pub fn ggs_objective(series: &MultiSeries, breakpoints: &[usize], lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if breakpoints.windows(2).any(|w| w[0] >= w[1])
        || breakpoints.iter().any(|&b| b == 0 || b >= series.len())
    {
        return Err(Error::InvalidBreakpoints(format!("{breakpoints:?}")));
    }
    let stats = Stats::new(series);
    bounds(breakpoints, series.len())
        .windows(2)
        .map(|w| stats.objective(w[0], w[1], lambda))
        .sum()
}

/// Per-segment mean and covariance for a fitted segmentation.
pub fn segment_stats(series: &MultiSeries, seg: &Segmentation) -> Vec<SegmentStats> {
    let stats = Stats::new(series);
    seg.segments()
        .into_iter()
        .map(|(a, b)| {
            let (mut mean, covariance) = stats.moments(a, b);
            for (mu, c) in mean.iter_mut().zip(&stats.center) {
                *mu += c;
            }
            SegmentStats { mean, covariance }
        })
        .collect()
}

/// Best split of `start..end` into two nonempty parts, with the split index
/// kept at or below `max_split`. Returns `(split, combined objective)`.
fn best_split(
    stats: &Stats,
    start: usize,
    end: usize,
    max_split: usize,
    lambda: f64,
) -> Result<Option<(usize, f64)>> {
    let mut best: Option<(usize, f64)> = None;
    for t in start + 1..end.min(max_split + 1) {
        let v = stats.objective(start, t, lambda)? + stats.objective(t, end, lambda)?;
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((t, v));
        }
    }
    Ok(best)
}

pub(crate) fn greedy_with<F: FnMut(f64)>(
    series: &MultiSeries,
    model: GgsModel,
    mut observe: F,
) -> Result<Segmentation> {
    check_lambda(model.lambda)?;
    let len = series.len();
    let horizon = series.horizon();
    if model.k_target == 0 {
        return Err(Error::InvalidConfig("k_target must be at least 1".into()));
    }
    if model.k_target > horizon.saturating_sub(1) {
        return Err(Error::TooShort(format!(
            "{len} points cannot hold {} breakpoints inside (0, {horizon})",
            model.k_target
        )));
    }
    let stats = Stats::new(series);
    let lambda = model.lambda;
    let mut bps: Vec<usize> = Vec::with_capacity(model.k_target);
    let mut seg_obj = vec![stats.objective(0, len, lambda)?];
    observe(seg_obj.iter().sum());

    for _ in 0..model.k_target {
        let b = bounds(&bps, len);
        let mut best: Option<(usize, usize, f64, f64)> = None; // (segment, split, gain, value)
        for (k, w) in b.windows(2).enumerate() {
            if let Some((t, v)) = best_split(&stats, w[0], w[1], horizon - 1, lambda)? {
                let gain = v - seg_obj[k];
                if best.is_none_or(|(_, _, g, _)| gain > g) {
                    best = Some((k, t, gain, v));
                }
            }
        }
        let (k, t, _, _) = best.expect("k_target < T leaves a splittable segment");
        bps.insert(k, t);
        let b = bounds(&bps, len);
        seg_obj = b
            .windows(2)
            .map(|w| stats.objective(w[0], w[1], lambda))
            .collect::<Result<_>>()?;
        observe(seg_obj.iter().sum());

        // adjust every breakpoint within its neighbors until nothing moves
        loop {
            let mut moved = false;
            for i in 0..bps.len() {
                let prev = if i == 0 { 0 } else { bps[i - 1] };
                let next = bps.get(i + 1).copied().unwrap_or(len);
                let current = seg_obj[i] + seg_obj[i + 1];
                if let Some((t, v)) = best_split(&stats, prev, next, horizon - 1, lambda)? {
                    if v > current && t != bps[i] {
                        bps[i] = t;
                        seg_obj[i] = stats.objective(prev, t, lambda)?;
                        seg_obj[i + 1] = stats.objective(t, next, lambda)?;
                        moved = true;
                        observe(seg_obj.iter().sum());
                    }
                }
            }
            if !moved {
                break;
            }
        }
    }
    Segmentation::new(bps, horizon, Source::Merged)
}

/// Greedy Gaussian segmentation into `k_target + 1` segments.
pub fn ggs_segment(series: &MultiSeries, k_target: usize, lambda: f64) -> Result<Segmentation> {
    greedy_with(series, GgsModel { lambda, k_target }, |_| {})
}

impl GgsModel {
    pub fn new(k_target: usize) -> Self {
        Self {
            lambda: DEFAULT_LAMBDA,
            k_target,
        }
    }

    pub fn segment(&self, series: &MultiSeries) -> Result<Segmentation> {
        greedy_with(series, *self, |_| {})
    }
}
