// SPDX-License-Identifier: MIT OR Apache-2.0

//! A posteriori optimal trading on a single positive channel.
//!
//! The virtual portfolio is either fully in cash or fully in the surrogate
//! stock. Given the whole price path, the wealth-maximizing sequence of
//! positions under a linear transaction cost `eps` is found by a forward
//! pass that keeps, per time index, the best state ending in cash and the
//! best state ending in stock, followed by backtracking over the recorded
//! parents.

use crate::error::{Error, Result};
use crate::model::{AptsConfig, Position, SwitchSignal};

/// Portfolio state at one time index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeState {
    pub shares: f64,
    pub cash: f64,
    pub position: Position,
    pub wealth: f64,
}

impl TradeState {
    /// Starts in cash with exactly enough to buy one share at `price0`
    /// after paying the transaction cost.
    pub fn initial(price0: f64, eps: f64) -> Self {
        let cash = price0 / (1.0 - eps);
        Self {
            shares: 0.0,
            cash,
            position: Position::Cash,
            wealth: cash,
        }
    }

    /// The two successors of `self` at the next index: `(in cash, in stock)`.
    ///
    /// Trades execute at `price_t`; the stock successor is valued at
    /// `price_next`.
    fn successors(&self, price_t: f64, price_next: f64, eps: f64) -> (TradeState, TradeState) {
        match self.position {
            Position::Cash => {
                let hold = TradeState {
                    shares: 0.0,
                    cash: self.cash,
                    position: Position::Cash,
                    wealth: self.cash,
                };
                let shares = self.cash * (1.0 - eps) / price_t;
                let buy = TradeState {
                    shares,
                    cash: 0.0,
                    position: Position::Stock,
                    wealth: shares * price_next,
                };
                (hold, buy)
            }
            Position::Stock => {
                let cash = self.shares * price_t * (1.0 - eps);
                let sell = TradeState {
                    shares: 0.0,
                    cash,
                    position: Position::Cash,
                    wealth: cash,
                };
                let hold = TradeState {
                    shares: self.shares,
                    cash: 0.0,
                    position: Position::Stock,
                    wealth: self.shares * price_next,
                };
                (sell, hold)
            }
        }
    }
}

fn check_price(index: usize, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositivePrice { index, value })
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if (0.0..1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "transaction cost must lie in [0, 1), got {eps}"
        )))
    }
}

/// Applies both controls to `state`, returning `(cash successor, stock successor)`.
pub fn step_transitions(
    state: &TradeState,
    price_t: f64,
    price_next: f64,
    eps: f64,
) -> Result<(TradeState, TradeState)> {
    check_price(0, price_t)?;
    check_price(1, price_next)?;
    check_eps(eps)?;
    Ok(state.successors(price_t, price_next, eps))
}

#[derive(Debug, Clone, Copy)]
struct Node {
    state: TradeState,
    switches: u32,
}

/// Picks the better of two candidates for the same successor position.
///
/// Higher wealth wins. Equal wealth prefers the path with fewer switches,
/// then the candidate that switches now over the one that switched earlier.
fn pick(stay: Node, switch: Node) -> (Node, bool) {
    let (ws, wx) = (stay.state.wealth, switch.state.wealth);
    let take_switch = if wx != ws {
        wx > ws
    } else {
        switch.switches <= stay.switches
    };
    if take_switch {
        (switch, true)
    } else {
        (stay, false)
    }
}

/// Result of one optimal trading run.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeOutcome {
    pub signal: SwitchSignal,
    pub terminal_wealth: f64,
}

/// Computes the wealth-maximizing position sequence `b(0..=T)` for a
/// positive price path at transaction cost `eps`.
///
/// `b(t)` is the position held on arrival at index `t`, so `b(0)` is always
/// cash. At the horizon cash is chosen only if it is strictly richer (or,
/// on a tie, reached with fewer switches).
pub fn trade(prices: &[f64], eps: f64) -> Result<TradeOutcome> {
    check_eps(eps)?;
    if prices.len() < 2 {
        return Err(Error::TooShort(format!(
            "{} price(s), at least 2 required",
            prices.len()
        )));
    }
    for (i, &p) in prices.iter().enumerate() {
        check_price(i, p)?;
    }
    let horizon = prices.len() - 1;

    // parents[t] = (parent of cash node at t, parent of stock node at t)
    let mut parents = vec![(Position::Cash, Position::Cash); prices.len()];
    let start = Node {
        state: TradeState::initial(prices[0], eps),
        switches: 0,
    };
    let (c1, s1) = start.state.successors(prices[0], prices[1], eps);
    let mut cash = Node {
        state: c1,
        switches: 0,
    };
    let mut stock = Node {
        state: s1,
        switches: 1,
    };

    for t in 1..horizon {
        let (p, next) = (prices[t], prices[t + 1]);
        let (cash_hold, cash_buy) = cash.state.successors(p, next, eps);
        let (stock_sell, stock_hold) = stock.state.successors(p, next, eps);

        let (new_cash, sold) = pick(
            Node {
                state: cash_hold,
                switches: cash.switches,
            },
            Node {
                state: stock_sell,
                switches: stock.switches + 1,
            },
        );
        let (new_stock, bought) = pick(
            Node {
                state: stock_hold,
                switches: stock.switches,
            },
            Node {
                state: cash_buy,
                switches: cash.switches + 1,
            },
        );
        parents[t + 1] = (
            if sold {
                Position::Stock
            } else {
                Position::Cash
            },
            if bought {
                Position::Cash
            } else {
                Position::Stock
            },
        );
        cash = new_cash;
        stock = new_stock;
    }

    let (wc, ws) = (cash.state.wealth, stock.state.wealth);
    let end_in_cash = wc > ws || (wc == ws && cash.switches < stock.switches);
    let (mut pos, terminal_wealth) = if end_in_cash {
        (Position::Cash, wc)
    } else {
        (Position::Stock, ws)
    };

    let mut values = vec![Position::Cash; prices.len()];
    for t in (1..=horizon).rev() {
        values[t] = pos;
        pos = match pos {
            Position::Cash => parents[t].0,
            Position::Stock => parents[t].1,
        };
    }
    debug_assert_eq!(pos, Position::Cash);
    values[0] = Position::Cash;

    Ok(TradeOutcome {
        signal: SwitchSignal::new(values, eps),
        terminal_wealth,
    })
}

/// Transaction cost level for iteration `j`: 0, then `eps_min`, then
/// `gamma_mult` times the previous level. Returns `None` once the level
/// would exceed `eps_max`.
pub fn epsilon_schedule(
    eps_prev: f64,
    eps_min: f64,
    eps_max: f64,
    gamma_mult: f64,
    j: usize,
) -> Option<f64> {
    let eps = match j {
        0 => 0.0,
        1 => eps_min,
        _ => gamma_mult * eps_prev,
    };
    (eps <= eps_max).then_some(eps)
}

/// Every level the schedule visits for `cfg`, in order.
///
/// Levels at or above 1 are never visited.
pub fn epsilon_levels(cfg: &AptsConfig) -> Vec<f64> {
    let mut levels = Vec::new();
    let mut prev = 0.0;
    for j in 0.. {
        match epsilon_schedule(prev, cfg.eps_min, cfg.eps_max, cfg.gamma_mult, j) {
            Some(eps) if eps < 1.0 => {
                levels.push(eps);
                prev = eps;
            }
            _ => break,
        }
    }
    levels
}

/// True iff the signal switches at least once and at most `k_max` times.
pub fn terminate(signal: &SwitchSignal, k_max: usize) -> bool {
    signal.switch_count > 0 && signal.switch_count <= k_max
}

/// Outcome of the per-channel transaction cost search.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSearch {
    pub signal: SwitchSignal,
    /// Number of trading runs performed.
    pub iterations: usize,
    /// Set when no profitable trade exists even at zero cost; the signal is
    /// then all cash.
    pub degenerate: bool,
}

/// Raises the transaction cost until the optimal signal switches between 1
/// and `k_max` times.
///
/// If the count drops to zero first, the last signal with a positive count
/// is returned. If the schedule runs out, the last computed signal is
/// returned. Either way the count may exceed `k_max`; merging prunes later.
pub fn channel_search(prices: &[f64], cfg: &AptsConfig) -> Result<ChannelSearch> {
    let levels = epsilon_levels(cfg);
    let mut last: Option<SwitchSignal> = None;
    let mut iterations = 0;
    for &eps in &levels {
        let outcome = trade(prices, eps)?;
        iterations += 1;
        let signal = outcome.signal;
        if signal.switch_count == 0 {
            return Ok(match last {
                Some(signal) => ChannelSearch {
                    signal,
                    iterations,
                    degenerate: false,
                },
                None => ChannelSearch {
                    signal,
                    iterations,
                    degenerate: true,
                },
            });
        }
        if terminate(&signal, cfg.k_max) {
            return Ok(ChannelSearch {
                signal,
                iterations,
                degenerate: false,
            });
        }
        last = Some(signal);
    }
    // levels always starts with 0, so at least one run happened
    Ok(ChannelSearch {
        signal: last.expect("schedule visits at least one level"),
        iterations,
        degenerate: false,
    })
}
