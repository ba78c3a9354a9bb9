// SPDX-License-Identifier: MIT OR Apache-2.0

//! End-to-end segmentation: per-channel trading in both time directions,
//! consensus per direction, then merging.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::consensus::{consensus, crossings, ConsensusTrace};
use crate::error::Result;
use crate::merge::merge;
use crate::model::{AptsConfig, MultiSeries, Position, Segmentation, Source, SwitchSignal};
use crate::normalize::{normalize_channel, plateau_filter, plateau_reinsert, PlateauMask};
use crate::trade::{channel_search, trade, ChannelSearch};

/// Per-channel bookkeeping of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelReport {
    /// Transaction cost level selected on the forward series and reused on
    /// the reversed one.
    pub epsilon: f64,
    /// Trading runs spent searching for `epsilon`.
    pub forward_runs: usize,
    /// Cost levels tried on the reversed series; always zero.
    pub reverse_eps_iterations: usize,
    pub degenerate: bool,
}

/// Signals and breakpoints of one time direction, in forward indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct PassResult {
    /// Optimal positions per channel, `b(t)` = position held on arrival at
    /// `t`, in the pass's own time direction.
    pub signals: Vec<SwitchSignal>,
    /// Trade decisions per channel in forward indexing: the position taken
    /// at `t` for the step to `t + 1` (forward pass) or arriving at `t`
    /// (reverse pass).
    pub decisions: Vec<Vec<Position>>,
    pub trace: ConsensusTrace,
    pub segmentation: Segmentation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AptsResult {
    pub segmentation: Segmentation,
    pub forward: PassResult,
    pub reverse: PassResult,
    pub channels: Vec<ChannelReport>,
    pub elapsed: Duration,
}

impl AptsResult {
    pub fn breakpoints(&self) -> &[usize] {
        self.segmentation.breakpoints()
    }

    pub fn epsilons(&self) -> Vec<f64> {
        self.channels.iter().map(|c| c.epsilon).collect()
    }

    pub fn all_degenerate(&self) -> bool {
        self.channels.iter().all(|c| c.degenerate)
    }
}

/// Maps a reversed-time sequence back to forward indexing, `t -> T - t`.
pub fn reverse_index_map<T: Copy>(signal: &[T]) -> Vec<T> {
    signal.iter().rev().copied().collect()
}

/// Converts arrival positions `b(0..=T)` into decisions: the position chosen
/// at `t` is `b(t + 1)`; the last index repeats `b(T)`.
///
/// A switch in the decision sequence then sits on the index where the trade
/// was executed, i.e. on the local extremum itself.
fn decisions(positions: &[Position]) -> Vec<Position> {
    let mut out: Vec<Position> = positions.iter().skip(1).copied().collect();
    if let Some(&last) = positions.last() {
        out.push(last);
    }
    out
}

fn prepare(raw: &[f64], gamma_plat: f64) -> (Vec<f64>, PlateauMask) {
    let norm = normalize_channel(raw);
    if gamma_plat > 0.0 {
        plateau_filter(&norm, gamma_plat)
    } else {
        let len = norm.values.len();
        (norm.values, PlateauMask::identity(len))
    }
}

struct ChannelPass {
    signal: SwitchSignal,
    decisions: Vec<Position>,
}

fn expand(signal: SwitchSignal, mask: &PlateauMask) -> Result<ChannelPass> {
    let full = plateau_reinsert(&signal.values, mask)?;
    Ok(ChannelPass {
        decisions: decisions(&full),
        signal: SwitchSignal::new(full, signal.epsilon),
    })
}

fn forward_channel(raw: &[f64], cfg: &AptsConfig) -> Result<(ChannelPass, ChannelSearch)> {
    let (prices, mask) = prepare(raw, cfg.gamma_plat);
    let search = if prices.len() < 2 {
        // the plateau filter collapsed the whole channel
        ChannelSearch {
            signal: SwitchSignal::new(vec![Position::Cash; prices.len()], 0.0),
            iterations: 0,
            degenerate: true,
        }
    } else {
        channel_search(&prices, cfg)?
    };
    let pass = expand(search.signal.clone(), &mask)?;
    Ok((pass, search))
}

fn reverse_channel(raw_reversed: &[f64], eps: f64, gamma_plat: f64) -> Result<ChannelPass> {
    let (prices, mask) = prepare(raw_reversed, gamma_plat);
    let signal = if prices.len() < 2 {
        SwitchSignal::new(vec![Position::Cash; prices.len()], eps)
    } else {
        trade(&prices, eps)?.signal
    };
    let mut pass = expand(signal, &mask)?;
    pass.decisions = reverse_index_map(&pass.decisions);
    Ok(pass)
}

fn assemble(passes: Vec<ChannelPass>, weights: &[f64], source: Source) -> Result<PassResult> {
    let (signals, decisions): (Vec<_>, Vec<_>) =
        passes.into_iter().map(|p| (p.signal, p.decisions)).unzip();
    let trace = consensus(&decisions, weights)?;
    let segmentation = crossings(&trace, source);
    Ok(PassResult {
        signals,
        decisions,
        trace,
        segmentation,
    })
}

/// Segments `series` with the trading-inspired consensus method.
///
/// Channels are processed in parallel on the current rayon pool; wrap the
/// call in `ThreadPool::install` to control the degree of parallelism.
pub fn apts(series: &MultiSeries, cfg: &AptsConfig) -> Result<AptsResult> {
    cfg.validate()?;
    let weights = cfg.weights_for(series.n_channels())?;
    let start = Instant::now();

    let forward: Vec<(ChannelPass, ChannelSearch)> = series
        .channels()
        .par_iter()
        .map(|ch| forward_channel(ch, cfg))
        .collect::<Result<_>>()?;

    let channels: Vec<ChannelReport> = forward
        .iter()
        .map(|(_, s)| ChannelReport {
            epsilon: s.signal.epsilon,
            forward_runs: s.iterations,
            reverse_eps_iterations: 0,
            degenerate: s.degenerate,
        })
        .collect();
    let forward = assemble(
        forward.into_iter().map(|(p, _)| p).collect(),
        &weights,
        Source::Forward,
    )?;

    let reversed = series.reversed();
    let backward: Vec<ChannelPass> = reversed
        .channels()
        .par_iter()
        .zip(&channels)
        .map(|(ch, report)| reverse_channel(ch, report.epsilon, cfg.gamma_plat))
        .collect::<Result<_>>()?;
    let reverse = assemble(backward, &weights, Source::Reverse)?;

    let segmentation = if channels.iter().all(|c| c.degenerate) {
        Segmentation::empty(series.horizon(), Source::Merged)
    } else {
        merge(
            &forward.segmentation,
            &reverse.segmentation,
            cfg.gamma_close_for(series.horizon()),
            cfg.k_max,
        )?
    };

    Ok(AptsResult {
        segmentation,
        forward,
        reverse,
        channels,
        elapsed: start.elapsed(),
    })
}
