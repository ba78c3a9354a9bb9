// SPDX-License-Identifier: MIT OR Apache-2.0

//! Channel consensus: sign alignment, weighted averaging and zero crossings.

use crate::error::{Error, Result};
use crate::model::{Position, Segmentation, Source};

/// Weighted, sign-aligned average of channel signals.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusTrace {
    /// Consensus value per index, in `[-1, 1]`.
    pub q: Vec<f64>,
    /// Alignment factor per channel; the first is always `+1`.
    pub signs: Vec<i8>,
}

/// Chooses `p_i = ±1` per channel so that channel `i` agrees with channel 0
/// on as many indices as possible. Ties resolve to `+1`.
pub fn align_signs<S: AsRef<[Position]>>(signals: &[S]) -> Vec<i8> {
    let Some(reference) = signals.first() else {
        return Vec::new();
    };
    let reference = reference.as_ref();
    let mut signs = Vec::with_capacity(signals.len());
    signs.push(1);
    for s in &signals[1..] {
        let agree = reference
            .iter()
            .zip(s.as_ref())
            .filter(|(a, b)| a == b)
            .count();
        let disagree = reference.len().min(s.as_ref().len()) - agree;
        // sum_t |b_1 + p b_i| is 2*agree for p = +1 and 2*disagree for p = -1
        signs.push(if disagree > agree { -1 } else { 1 });
    }
    signs
}

/// Computes `q(t) = sum_i w_i p_i b_i(t)`.
///
/// Positive and negative contributions are summed separately; balanced votes
/// under equal weights give exactly zero.
pub fn consensus<S: AsRef<[Position]>>(signals: &[S], weights: &[f64]) -> Result<ConsensusTrace> {
    if weights.len() != signals.len() {
        return Err(Error::WeightMismatch {
            expected: signals.len(),
            found: weights.len(),
        });
    }
    let Some(first) = signals.first() else {
        return Err(Error::Empty);
    };
    let len = first.as_ref().len();
    for s in signals {
        if s.as_ref().len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                found: s.as_ref().len(),
            });
        }
    }
    let signs = align_signs(signals);
    let mut up = vec![0.0; len];
    let mut down = vec![0.0; len];
    for ((s, &p), &w) in signals.iter().zip(&signs).zip(weights) {
        for (t, b) in s.as_ref().iter().enumerate() {
            if b.sign() * p > 0 {
                up[t] += w;
            } else {
                down[t] += w;
            }
        }
    }
    let q = up.iter().zip(&down).map(|(u, d)| u - d).collect();
    Ok(ConsensusTrace { q, signs })
}

/// Breakpoints where the consensus changes sign.
///
/// A zero value keeps the previous sign; a zero at index 0 counts as
/// negative. Sign changes at the last index are not breakpoints.
pub fn crossings(trace: &ConsensusTrace, source: Source) -> Segmentation {
    let q = &trace.q;
    let horizon = q.len().saturating_sub(1);
    let sign_of = |v: f64, prev: bool| {
        if v > 0.0 {
            true
        } else if v < 0.0 {
            false
        } else {
            prev
        }
    };
    let mut breakpoints = Vec::new();
    if let Some(&q0) = q.first() {
        let mut positive = sign_of(q0, false);
        for (t, &v) in q.iter().enumerate().skip(1) {
            let s = sign_of(v, positive);
            if s != positive && t < horizon {
                breakpoints.push(t);
            }
            positive = s;
        }
    }
    Segmentation::new(breakpoints, horizon, source)
        .expect("crossing indices are strictly increasing inside (0, T)")
}
