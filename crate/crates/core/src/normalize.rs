// SPDX-License-Identifier: MIT OR Apache-2.0

//! Positivity shift and the plateau pre-filter.

use crate::error::{Error, Result};

/// A channel shifted so every value is at least 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedChannel {
    pub values: Vec<f64>,
    pub offset: f64,
}

/// Shifts a channel by `|min| + 1`.
///
/// The shift is applied even to channels that are already positive. Values
/// keep their relative increments, which is what the trading cost acts on.
pub fn normalize_channel(raw: &[f64]) -> NormalizedChannel {
    let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let offset = min.abs() + 1.0;
    NormalizedChannel {
        values: raw.iter().map(|v| v + offset).collect(),
        offset,
    }
}

/// Indices of a channel that survive the plateau filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlateauMask {
    pub kept_indices: Vec<usize>,
    pub full_len: usize,
}

impl PlateauMask {
    pub fn identity(len: usize) -> Self {
        Self {
            kept_indices: (0..len).collect(),
            full_len: len,
        }
    }

    pub fn reduced_len(&self) -> usize {
        self.kept_indices.len()
    }

    pub fn removed(&self) -> usize {
        self.full_len - self.kept_indices.len()
    }
}

/// Drops points that moved no more than `gamma_plat` away from the last
/// kept point. Index 0 is always kept.
pub fn plateau_filter(norm: &NormalizedChannel, gamma_plat: f64) -> (Vec<f64>, PlateauMask) {
    let values = &norm.values;
    let mut kept_indices = Vec::with_capacity(values.len());
    let mut reduced = Vec::with_capacity(values.len());
    if let Some(&first) = values.first() {
        kept_indices.push(0);
        reduced.push(first);
        let mut last = first;
        for (t, &v) in values.iter().enumerate().skip(1) {
            if (v - last).abs() > gamma_plat {
                kept_indices.push(t);
                reduced.push(v);
                last = v;
            }
        }
    }
    let mask = PlateauMask {
        kept_indices,
        full_len: values.len(),
    };
    (reduced, mask)
}

/// Expands a signal computed on the reduced series back to full length,
/// carrying each kept value forward over the removed indices after it.
pub fn plateau_reinsert<T: Copy>(signal: &[T], mask: &PlateauMask) -> Result<Vec<T>> {
    if signal.len() != mask.reduced_len() {
        return Err(Error::LengthMismatch {
            expected: mask.reduced_len(),
            found: signal.len(),
        });
    }
    let mut out = Vec::with_capacity(mask.full_len);
    for (j, &start) in mask.kept_indices.iter().enumerate() {
        let end = mask
            .kept_indices
            .get(j + 1)
            .copied()
            .unwrap_or(mask.full_len);
        debug_assert_eq!(out.len(), start);
        out.extend(std::iter::repeat_n(signal[j], end - start));
    }
    Ok(out)
}
