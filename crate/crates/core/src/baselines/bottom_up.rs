// SPDX-License-Identifier: MIT OR Apache-2.0

//! Bottom-up piecewise-affine segmentation.

use crate::error::{Error, Result};
use crate::model::{MultiSeries, Segmentation, Source};

/// Residual sum of squares of a least-squares line through one window,
/// abscissae `0..len`.
fn line_sse(y: &[f64]) -> f64 {
    let m = y.len();
    if m < 3 {
        return 0.0;
    }
    let mf = m as f64;
    let t_mean = (mf - 1.0) / 2.0;
    let y_mean = y.iter().sum::<f64>() / mf;
    let (mut stt, mut sty, mut syy) = (0.0, 0.0, 0.0);
    for (t, &v) in y.iter().enumerate() {
        let dt = t as f64 - t_mean;
        let dy = v - y_mean;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    (syy - sty * sty / stt).max(0.0)
}

/// Summed residual of per-channel affine least-squares fits.
pub fn affine_fit_sse(windows: &[&[f64]]) -> f64 {
    windows.iter().map(|w| line_sse(w)).sum()
}

fn window_cost(series: &MultiSeries, start: usize, end: usize) -> f64 {
    series
        .channels()
        .iter()
        .map(|ch| line_sse(&ch[start..end]))
        .sum()
}

/// Runs the merge loop, reporting the segment list after every merge.
pub(crate) fn bottom_up_with<F: FnMut(&[(usize, usize)])>(
    series: &MultiSeries,
    k_target: usize,
    mut observe: F,
) -> Result<Segmentation> {
    let len = series.len();
    if len < 2 * (k_target + 1) {
        return Err(Error::TooShort(format!(
            "{len} points cannot hold {} segments of two points",
            k_target + 1
        )));
    }
    // finest approximation: two-point segments, the last one takes a third
    // point when the length is odd
    let mut segs: Vec<(usize, usize)> = (0..len / 2).map(|i| (2 * i, 2 * i + 2)).collect();
    if let Some(last) = segs.last_mut() {
        last.1 = len;
    }
    let mut costs: Vec<f64> = segs
        .windows(2)
        .map(|w| window_cost(series, w[0].0, w[1].1))
        .collect();
    observe(&segs);

    while segs.len() > k_target + 1 {
        let mut best = 0;
        for (i, &c) in costs.iter().enumerate().skip(1) {
            if c < costs[best] {
                best = i;
            }
        }
        segs[best].1 = segs[best + 1].1;
        segs.remove(best + 1);
        costs.remove(best);
        if best < costs.len() {
            costs[best] = window_cost(series, segs[best].0, segs[best + 1].1);
        }
        if best > 0 {
            costs[best - 1] = window_cost(series, segs[best - 1].0, segs[best].1);
        }
        observe(&segs);
    }
    let breakpoints = segs.iter().skip(1).map(|s| s.0).collect();
    Segmentation::new(breakpoints, series.horizon(), Source::Merged)
}

/// Merges adjacent segments, cheapest merged fit first, until `k_target`
/// breakpoints remain.
pub fn bu_segment(series: &MultiSeries, k_target: usize) -> Result<Segmentation> {
    bottom_up_with(series, k_target, |_| {})
}
