// SPDX-License-Identifier: MIT OR Apache-2.0

//! Model-free multivariate time series segmentation.
//!
//! Every channel is shifted to strictly positive values and treated as a
//! surrogate stock price. A posteriori optimal buy/sell decisions under a
//! linear transaction cost are computed by dynamic programming; the cost
//! level is raised until the number of trades drops below a bound. Channel
//! decisions are sign-aligned and averaged, and the zero crossings of that
//! average become breakpoints. The same is repeated on the time-reversed
//! series and both breakpoint lists are merged.
//!
//! Two comparison methods are provided in [`baselines`]: bottom-up
//! piecewise-affine merging and greedy Gaussian segmentation.

#![forbid(unsafe_code)]

pub mod baselines;
pub mod consensus;
pub mod error;
pub mod merge;
pub mod model;
pub mod normalize;
pub mod pipeline;
pub mod synth;
pub mod trade;

pub use consensus::{align_signs, consensus, crossings, ConsensusTrace};
pub use error::{Error, Result};
pub use merge::merge;
pub use model::{
    validate_series, AptsConfig, MultiSeries, Position, Segmentation, Source, SwitchSignal,
};
pub use normalize::{
    normalize_channel, plateau_filter, plateau_reinsert, NormalizedChannel, PlateauMask,
};
pub use pipeline::{apts, reverse_index_map, AptsResult, ChannelReport, PassResult};
pub use trade::{
    channel_search, epsilon_schedule, step_transitions, terminate, trade, ChannelSearch,
    TradeOutcome, TradeState,
};
