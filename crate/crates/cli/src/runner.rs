// SPDX-License-Identifier: MIT OR Apache-2.0

//! Running one algorithm, timing repeated runs and channel-count scaling.

use std::fmt::Write as _;
use std::time::Instant;

use apts_core::baselines::{bu_segment, ggs_segment};
use apts_core::synth::noisy_replicas;
use apts_core::{apts, AptsConfig, MultiSeries, Result};

use crate::report::Timing;

#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    Apts(AptsConfig),
    Bu { k: usize },
    Ggs { k: usize, lambda: f64 },
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Apts(_) => "apts",
            Algorithm::Bu { .. } => "bu",
            Algorithm::Ggs { .. } => "ggs",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub breakpoints: Vec<usize>,
    /// Per-channel cost levels; empty for the baselines.
    pub epsilons: Vec<f64>,
    pub seconds: f64,
}

pub fn run_once(series: &MultiSeries, algo: &Algorithm) -> Result<Outcome> {
    let start = Instant::now();
    let (breakpoints, epsilons) = match algo {
        Algorithm::Apts(cfg) => {
            let r = apts(series, cfg)?;
            (r.breakpoints().to_vec(), r.epsilons())
        }
        Algorithm::Bu { k } => (bu_segment(series, *k)?.breakpoints().to_vec(), Vec::new()),
        Algorithm::Ggs { k, lambda } => (
            ggs_segment(series, *k, *lambda)?.breakpoints().to_vec(),
            Vec::new(),
        ),
    };
    Ok(Outcome {
        breakpoints,
        epsilons,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs `repeat` times and reports min and median wall-clock seconds. The
/// returned outcome is the fastest run.
pub fn run_repeated(
    series: &MultiSeries,
    algo: &Algorithm,
    repeat: usize,
) -> Result<(Outcome, Timing)> {
    let repeat = repeat.max(1);
    let mut best = run_once(series, algo)?;
    let mut times = vec![best.seconds];
    for _ in 1..repeat {
        let o = run_once(series, algo)?;
        times.push(o.seconds);
        if o.seconds < best.seconds {
            best = o;
        }
    }
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    let median = if times.len() % 2 == 0 {
        (times[mid - 1] + times[mid]) / 2.0
    } else {
        times[mid]
    };
    Ok((
        best,
        Timing {
            repeat,
            min: times[0],
            median,
        },
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub algo: &'static str,
    pub n_x: usize,
    pub horizon: usize,
    /// Fastest of the repeated runs.
    pub seconds: f64,
    pub median: f64,
}

/// The first `n_x` channels of `base` when it has that many, otherwise
/// `n_x` noisy replicas of its first channel.
pub fn channel_subset(base: &MultiSeries, n_x: usize, sigma: f64, seed: u64) -> MultiSeries {
    if base.n_channels() >= n_x {
        MultiSeries::new(base.channels()[..n_x].to_vec()).expect("subset of a valid series")
    } else {
        noisy_replicas(base, n_x, sigma, seed)
    }
}

/// Times every algorithm at every channel count with the length fixed.
pub fn bench_scaling(
    base: &MultiSeries,
    counts: &[usize],
    algos: &[Algorithm],
    repeat: usize,
    sigma: f64,
    seed: u64,
) -> Result<Vec<ScalingRow>> {
    let mut rows = Vec::with_capacity(counts.len() * algos.len());
    for &n_x in counts {
        let data = channel_subset(base, n_x, sigma, seed);
        for algo in algos {
            let (_, timing) = run_repeated(&data, algo, repeat)?;
            rows.push(ScalingRow {
                algo: algo.name(),
                n_x,
                horizon: data.horizon(),
                seconds: timing.min,
                median: timing.median,
            });
        }
    }
    Ok(rows)
}

/// Tab-separated table with a header row.
pub fn render_table(rows: &[ScalingRow]) -> String {
    let mut out = String::from("algo\tn_x\tT\tseconds\tseconds_median\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            r.algo, r.n_x, r.horizon, r.seconds, r.median
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use apts_core::synth;

    #[test]
    fn baselines_return_k_breakpoints() {
        let s = synth::example1();
        assert_eq!(
            run_once(&s, &Algorithm::Bu { k: 5 })
                .unwrap()
                .breakpoints
                .len(),
            5
        );
        let g = run_once(&s, &Algorithm::Ggs { k: 3, lambda: 0.1 }).unwrap();
        assert_eq!(g.breakpoints.len(), 3);
        assert!(g.epsilons.is_empty());
    }

    #[test]
    fn repeated_runs_agree() {
        let s = synth::example2();
        let (o, t) = run_repeated(&s, &Algorithm::Apts(AptsConfig::default()), 5).unwrap();
        assert_eq!(t.repeat, 5);
        assert!(t.min <= t.median);
        assert_eq!(o.breakpoints.len(), 5);
    }

    #[test]
    fn one_row_per_count_and_algorithm() {
        let base = synth::example1();
        let algos = [
            Algorithm::Apts(AptsConfig::default()),
            Algorithm::Bu { k: 2 },
        ];
        let rows = bench_scaling(&base, &[1, 3, 4], &algos, 1, 0.2, 0).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows.iter().filter(|r| r.algo == "bu").count(), 3);
        assert_eq!(render_table(&rows).lines().count(), 7);
    }

    #[test]
    fn subset_prefers_existing_channels() {
        let fig = synth::figure1();
        assert_eq!(
            channel_subset(&fig, 2, 0.2, 0).channels(),
            &fig.channels()[..2]
        );
        assert_eq!(channel_subset(&fig, 5, 0.2, 0).n_channels(), 5);
    }
}
