// SPDX-License-Identifier: MIT OR Apache-2.0

//! Deterministic synthetic benchmark series.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::model::MultiSeries;

/// Knots of the piecewise-affine benchmark on `0..=99`.
///
/// Besides the five extrema the curve has short kinks at 16-17 and 82-83.
pub const EXAMPLE1_KNOTS: [(f64, f64); 10] = [
    (0.0, 0.0),
    (16.0, 12.896_969_696_969_7),
    (17.0, 12.793_939_393_939_4),
    (33.0, -3.4),
    (49.0, 19.193_939_393_939_4),
    (50.0, 19.393_939_393_939_4),
    (66.0, 3.2),
    (82.0, 25.793_939_393_939_4),
    (83.0, 26.296_969_696_969_7),
    (99.0, 19.8),
];

/// Samples the polyline through `knots` at `len` equally spaced abscissae
/// spanning the first to the last knot.
pub fn piecewise_affine(knots: &[(f64, f64)], len: usize) -> Vec<f64> {
    assert!(knots.len() >= 2 && len >= 2);
    let (x0, x1) = (knots[0].0, knots[knots.len() - 1].0);
    let mut seg = 0;
    (0..len)
        .map(|i| {
            let x = x0 + (x1 - x0) * i as f64 / (len - 1) as f64;
            while seg + 2 < knots.len() && x > knots[seg + 1].0 {
                seg += 1;
            }
            let ((xa, ya), (xb, yb)) = (knots[seg], knots[seg + 1]);
            if x == xa {
                ya
            } else if x == xb {
                yb
            } else {
                ya + (yb - ya) * (x - xa) / (xb - xa)
            }
        })
        .collect()
}

/// 100 points of piecewise-affine data with extrema at 16, 33, 50, 66, 83.
pub fn example1() -> MultiSeries {
    MultiSeries::univariate(piecewise_affine(&EXAMPLE1_KNOTS, 100)).expect("finite data")
}

/// The same polyline stretched to `len` points.
pub fn example1_stretched(len: usize) -> MultiSeries {
    MultiSeries::univariate(piecewise_affine(&EXAMPLE1_KNOTS, len)).expect("finite data")
}

fn half_circles(len: usize) -> Vec<f64> {
    const RADIUS: f64 = 16.5;
    const CENTERS: [f64; 3] = [16.5, 49.5, 82.5];
    (0..len)
        .map(|t| {
            let t = t as f64;
            let c = CENTERS
                .iter()
                .copied()
                .min_by(|a, b| (t - a).abs().total_cmp(&(t - b).abs()))
                .unwrap();
            (RADIUS * RADIUS - (t - c) * (t - c)).max(0.0).sqrt()
        })
        .collect()
}

/// 100 points of three touching half-circles of radius 16.5.
pub fn example2() -> MultiSeries {
    MultiSeries::univariate(half_circles(100)).expect("finite data")
}

/// Three channels: the two examples above plus a sinusoid of period 100/3
/// whose extrema are shifted against theirs.
pub fn figure1() -> MultiSeries {
    let sine = (0..100)
        .map(|t| 20.0 * (0.06 * std::f64::consts::PI * t as f64).sin())
        .collect();
    MultiSeries::new(vec![
        example1().into_channels().remove(0),
        half_circles(100),
        sine,
    ])
    .expect("finite data")
}

/// `n_x` copies of the first channel of `base`, each perturbed by
/// independent zero-mean Gaussian noise of standard deviation `sigma`.
///
/// Noise comes from a ChaCha8 stream seeded with `seed` and drawn channel by
/// channel, index by index; normal variates use the ziggurat method.
pub fn noisy_replicas(base: &MultiSeries, n_x: usize, sigma: f64, seed: u64) -> MultiSeries {
    assert!(n_x >= 1 && sigma >= 0.0);
    let base = base.channel(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, sigma).expect("sigma is finite and nonnegative");
    let channels = (0..n_x)
        .map(|_| base.iter().map(|v| v + normal.sample(&mut rng)).collect())
        .collect();
    MultiSeries::new(channels).expect("finite data")
}

/// 100 points alternating exact plateaus and ramps: flat on `0..=20`,
/// rising by 0.5 per step to 10 at 40, flat to 60, falling back to 0 at 80
/// and flat to the end. Plateau points carry uniform noise in
/// `[-amplitude, amplitude)`.
pub fn ramps_and_plateaus(amplitude: f64, seed: u64) -> MultiSeries {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = (0..100usize)
        .map(|t| match t {
            21..40 => (t - 20) as f64 * 0.5,
            61..80 => 10.0 - (t - 60) as f64 * 0.5,
            _ => {
                let level = if (40..=60).contains(&t) { 10.0 } else { 0.0 };
                let noise = if amplitude > 0.0 {
                    rng.random_range(-amplitude..amplitude)
                } else {
                    0.0
                };
                level + noise
            }
        })
        .collect();
    MultiSeries::univariate(x).expect("finite data")
}

/// Plateau boundaries of [`ramps_and_plateaus`].
pub const PLATEAU_EDGES: [usize; 4] = [20, 40, 60, 80];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_plotted_values() {
        let s = example1();
        let x = s.channel(0);
        assert_eq!(x.len(), 100);
        assert_eq!(x[0], 0.0);
        assert!((x[33] + 3.4).abs() < 1e-12);
        assert!((x[83] - 26.2970).abs() < 1e-3);
        // spot checks against the plotted table
        assert!((x[1] - 0.806060606060606).abs() < 1e-9);
        assert!((x[40] - 6.48484848484848).abs() < 1e-9);
        assert!((x[58] - 11.2969696969697).abs() < 1e-9);
        assert!((x[90] - 23.4545454545455).abs() < 1e-9);
    }

    #[test]
    fn example2_plotted_values() {
        let x = example2().into_channels().remove(0);
        assert!((x[1] - 5.6565).abs() < 1e-3);
        assert!((x[16] - 16.4919).abs() < 1e-3);
        assert!(x[33].abs() < 1e-9);
        assert!(x[66].abs() < 1e-9);
        assert_eq!(x[16], x[17]);
    }

    #[test]
    fn stretched_example_keeps_the_shape() {
        let s = example1_stretched(199);
        assert_eq!(s.len(), 199);
        assert!((s.channel(0)[66] + 3.4).abs() < 1e-12);
    }

    #[test]
    fn plateau_series_shape() {
        let x = ramps_and_plateaus(0.0, 1).into_channels().remove(0);
        assert_eq!(x.len(), 100);
        assert_eq!(
            (x[20], x[30], x[40], x[60], x[70], x[80]),
            (0.0, 5.0, 10.0, 10.0, 5.0, 0.0)
        );
        let noisy = ramps_and_plateaus(0.01, 1).into_channels().remove(0);
        for t in 0..100 {
            assert!((noisy[t] - x[t]).abs() < 0.01);
        }
    }

    #[test]
    fn noiseless_replicas_equal_base() {
        let base = example1();
        let r = noisy_replicas(&base, 3, 0.0, 7);
        for ch in r.channels() {
            assert_eq!(ch.as_slice(), base.channel(0));
        }
    }

    #[test]
    fn replicas_are_reproducible() {
        let base = example2();
        let a = noisy_replicas(&base, 5, 0.2, 42);
        let b = noisy_replicas(&base, 5, 0.2, 42);
        assert_eq!(a, b);
        assert_ne!(a, noisy_replicas(&base, 5, 0.2, 43));
    }

    #[test]
    fn replica_noise_has_requested_spread() {
        let base = example1_stretched(427);
        let r = noisy_replicas(&base, 100, 0.2, 9);
        let diffs: Vec<f64> = r
            .channels()
            .iter()
            .flat_map(|ch| ch.iter().zip(base.channel(0)).map(|(a, b)| a - b))
            .collect();
        let n = diffs.len() as f64;
        let mean = diffs.iter().sum::<f64>() / n;
        let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((var.sqrt() - 0.2).abs() < 0.01, "std {}", var.sqrt());
    }
}
