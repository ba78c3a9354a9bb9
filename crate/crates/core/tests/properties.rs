// SPDX-License-Identifier: MIT OR Apache-2.0

use apts_core::synth::{ramps_and_plateaus, PLATEAU_EDGES};
use apts_core::trade::epsilon_levels;
use apts_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Terminal wealth of one explicit control sequence, replayed step by step.
/// `hold[t]` is the position kept from `t` to `t + 1`.
fn replay(prices: &[f64], eps: f64, hold: &[bool]) -> f64 {
    let mut cash = prices[0] / (1.0 - eps);
    let mut shares = 0.0;
    let mut in_stock = false;
    for (t, &want) in hold.iter().enumerate() {
        if want && !in_stock {
            shares = cash * (1.0 - eps) / prices[t];
            in_stock = true;
        } else if !want && in_stock {
            cash = shares * prices[t] * (1.0 - eps);
            in_stock = false;
        }
    }
    let last = prices[prices.len() - 1];
    if in_stock {
        shares * last
    } else {
        cash
    }
}

fn exhaustive(prices: &[f64], eps: f64) -> f64 {
    let steps = prices.len() - 1;
    (0u32..1 << steps)
        .map(|mask| {
            let hold: Vec<bool> = (0..steps).map(|t| mask >> t & 1 == 1).collect();
            replay(prices, eps, &hold)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn dp_wealth_equals_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..120 {
        let len = rng.random_range(2..=11);
        let prices: Vec<f64> = (0..len).map(|_| rng.random_range(0.5..3.0)).collect();
        for eps in [0.0, 0.01, 0.1, 0.5] {
            let out = trade(&prices, eps).unwrap();
            assert_eq!(
                out.terminal_wealth,
                exhaustive(&prices, eps),
                "{prices:?} eps {eps}"
            );
        }
    }
}

#[test]
fn switch_count_never_grows_with_cost() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let levels = epsilon_levels(&AptsConfig::default());
    for _ in 0..20 {
        let mut level = 0.0;
        let prices: Vec<f64> = (0..201)
            .map(|_| {
                level += rng.random_range(-1.0..1.0);
                level
            })
            .collect();
        let norm = normalize_channel(&prices);
        let counts: Vec<usize> = levels
            .iter()
            .map(|&e| trade(&norm.values, e).unwrap().signal.switch_count)
            .collect();
        assert!(counts.windows(2).all(|w| w[1] <= w[0]), "{counts:?}");
    }
}

#[test]
fn plateau_filter_finds_plateau_edges() {
    for seed in 0..5 {
        let s = ramps_and_plateaus(0.015, seed);
        let cfg = AptsConfig {
            gamma_plat: 0.05,
            ..AptsConfig::default()
        };
        let bps = apts(&s, &cfg).unwrap().segmentation;
        assert_eq!(bps.len(), PLATEAU_EDGES.len(), "{:?}", bps.breakpoints());
        for (b, e) in bps.breakpoints().iter().zip(PLATEAU_EDGES) {
            assert!(b.abs_diff(e) <= 1, "{:?}", bps.breakpoints());
        }
    }
}

#[test]
fn tiny_plateau_threshold_is_inert_on_varying_data() {
    let s = synth::figure1();
    let plain = apts(&s, &AptsConfig::default()).unwrap();
    let filtered = apts(
        &s,
        &AptsConfig {
            gamma_plat: 1e-12,
            ..AptsConfig::default()
        },
    )
    .unwrap();
    assert_eq!(plain.breakpoints(), filtered.breakpoints());
}

#[test]
fn reversing_the_series_mirrors_breakpoints_roughly() {
    let s = synth::example1();
    let fwd = apts(&s, &AptsConfig::default()).unwrap();
    let rev = apts(&s.reversed(), &AptsConfig::default()).unwrap();
    let horizon = s.horizon();
    let mirrored: Vec<usize> = rev
        .breakpoints()
        .iter()
        .rev()
        .map(|b| horizon - b)
        .collect();
    assert_eq!(mirrored.len(), fwd.breakpoints().len());
    for (a, b) in mirrored.iter().zip(fwd.breakpoints()) {
        assert!(a.abs_diff(*b) <= 1);
    }
}

fn series_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..4, 2usize..60).prop_flat_map(|(n, len)| {
        prop::collection::vec(prop::collection::vec(-50.0f64..50.0, len), n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn output_contract_holds(raw in series_strategy(), k_max in 1usize..12, plat in 0.0f64..0.5) {
        let s = MultiSeries::new(raw).unwrap();
        let cfg = AptsConfig { k_max, gamma_plat: plat, ..AptsConfig::default() };
        let a = apts(&s, &cfg).unwrap();
        let b = apts(&s, &cfg).unwrap();
        let bps = a.breakpoints();
        prop_assert!(bps.len() <= k_max);
        prop_assert!(bps.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(bps.iter().all(|&t| t > 0 && t < s.horizon()));
        prop_assert_eq!(bps, b.breakpoints());
        prop_assert!(a.channels.iter().all(|c| c.reverse_eps_iterations == 0));
    }
}
