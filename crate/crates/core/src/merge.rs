// SPDX-License-Identifier: MIT OR Apache-2.0

//! Fusion of forward and reverse breakpoint lists.

use crate::error::{Error, Result};
use crate::model::{Segmentation, Source};

fn distance(a: usize, b: usize) -> f64 {
    a.abs_diff(b) as f64
}

/// Merges two sorted breakpoint lists.
///
/// A forward and a reverse breakpoint closer than `gamma_close` are replaced
/// by their mean, rounded half down. Unpaired breakpoints are kept and exact
/// duplicates collapse. While more than `k_max` remain, the breakpoint with
/// the smallest gap to its predecessor is dropped (the later one on ties).
pub fn merge(
    fwd: &Segmentation,
    rev: &Segmentation,
    gamma_close: f64,
    k_max: usize,
) -> Result<Segmentation> {
    if fwd.horizon() != rev.horizon() {
        return Err(Error::LengthMismatch {
            expected: fwd.horizon(),
            found: rev.horizon(),
        });
    }
    let (a, b) = (fwd.breakpoints(), rev.breakpoints());
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (f, r) = (a[i], b[j]);
        if distance(f, r) < gamma_close {
            // defer to a strictly closer partner further along either list
            if r < f
                && b.get(j + 1)
                    .is_some_and(|&n| distance(f, n) < distance(f, r))
            {
                out.push(r);
                j += 1;
            } else if f < r
                && a.get(i + 1)
                    .is_some_and(|&n| distance(n, r) < distance(f, r))
            {
                out.push(f);
                i += 1;
            } else {
                out.push((f + r) / 2);
                i += 1;
                j += 1;
            }
        } else if r < f {
            out.push(r);
            j += 1;
        } else {
            out.push(f);
            i += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out.sort_unstable();
    out.dedup();

    while out.len() > k_max && out.len() > 1 {
        let mut victim = 1;
        for k in 2..out.len() {
            if out[k] - out[k - 1] <= out[victim] - out[victim - 1] {
                victim = k;
            }
        }
        out.remove(victim);
    }
    if k_max == 0 {
        out.clear();
    }
    Segmentation::new(out, fwd.horizon(), Source::Merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seg(b: &[usize], source: Source) -> Segmentation {
        Segmentation::new(b.to_vec(), 100, source).unwrap()
    }

    fn run(f: &[usize], r: &[usize], gamma: f64, k: usize) -> Vec<usize> {
        merge(&seg(f, Source::Forward), &seg(r, Source::Reverse), gamma, k)
            .unwrap()
            .breakpoints()
            .to_vec()
    }

    #[test]
    fn close_pair_is_averaged_half_down() {
        assert_eq!(run(&[10, 50], &[11, 80], 2.0, 10), vec![10, 50, 80]);
        assert_eq!(run(&[11], &[10], 2.0, 10), vec![10]);
        assert_eq!(run(&[10], &[14], 5.0, 10), vec![12]);
    }

    #[test]
    fn distance_equal_to_threshold_is_not_paired() {
        assert_eq!(run(&[16], &[18], 2.0, 10), vec![16, 18]);
    }

    #[test]
    fn pruning_drops_smallest_gap() {
        assert_eq!(run(&[10, 12, 50], &[], 2.0, 2), vec![10, 50]);
        // equal gaps: the later breakpoint goes first
        assert_eq!(run(&[10, 20, 30], &[], 1.0, 2), vec![10, 20]);
        // the distance of the first breakpoint to 0 does not count
        assert_eq!(run(&[1, 40, 45], &[], 1.0, 2), vec![1, 40]);
    }

    #[test]
    fn duplicates_collapse() {
        assert_eq!(run(&[20, 40], &[20, 40], 2.0, 10), vec![20, 40]);
        assert_eq!(run(&[20, 40], &[20, 40], 0.0, 10), vec![20, 40]);
    }

    #[test]
    fn prefers_the_nearer_partner() {
        assert_eq!(run(&[10], &[9, 10], 2.0, 10), vec![9, 10]);
        assert_eq!(run(&[10, 12], &[12], 3.0, 10), vec![10, 12]);
    }

    #[test]
    fn mismatched_lengths_fail() {
        let other = Segmentation::new(vec![5], 50, Source::Reverse).unwrap();
        assert!(matches!(
            merge(&seg(&[5], Source::Forward), &other, 2.0, 10),
            Err(Error::LengthMismatch { .. })
        ));
    }

    fn sorted_set() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::btree_set(1usize..100, 0..15).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #[test]
        fn output_contract(f in sorted_set(), r in sorted_set(), gamma in 0.0f64..6.0, k in 1usize..12) {
            let m = run(&f, &r, gamma, k);
            prop_assert!(m.len() <= k);
            prop_assert!(m.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(m.iter().all(|&b| (1..100).contains(&b)));
            for &b in &m {
                let near = f.iter().chain(&r).any(|&x| distance(x, b) < gamma.max(1.0));
                prop_assert!(near, "{} not near any input", b);
            }
        }

        #[test]
        fn idempotent_on_merged_output(f in sorted_set(), r in sorted_set(), gamma in 0.0f64..6.0, k in 1usize..12) {
            let m = run(&f, &r, gamma, k);
            prop_assert_eq!(run(&m, &m, gamma, k), m);
        }

        #[test]
        fn swapping_inputs_differs_only_at_half_integer_means(f in sorted_set(), r in sorted_set(), gamma in 0.0f64..6.0) {
            let a = run(&f, &r, gamma, 100);
            let b = run(&r, &f, gamma, 100);
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!(x.abs_diff(*y) <= 1);
            }
        }
    }
}
