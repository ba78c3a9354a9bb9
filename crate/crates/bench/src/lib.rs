// SPDX-License-Identifier: MIT OR Apache-2.0

//! Fixed benchmark inputs shared by the criterion benches.

use apts_core::synth::{example1_stretched, noisy_replicas};
use apts_core::MultiSeries;

/// Points per channel in the scaling benches.
pub const LENGTH: usize = 431;

pub const SEED: u64 = 7;

/// `n_x` noisy replicas of the stretched first example, noise level 0.2.
pub fn replicas(n_x: usize) -> MultiSeries {
    noisy_replicas(&example1_stretched(LENGTH), n_x, 0.2, SEED)
}

/// Noise-free first example stretched to `len` points.
pub fn stretched(len: usize) -> MultiSeries {
    example1_stretched(len)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_requested_shape() {
        let r = replicas(3);
        assert_eq!((r.n_channels(), r.len()), (3, LENGTH));
        assert_eq!(stretched(200).len(), 200);
    }
}
