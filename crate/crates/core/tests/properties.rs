//! Randomized invariants of the cost model.

use pcg_core::{
    all_pairs_distances, components, cost_delta, individual_cost, induce_graph, social_cost, Cost,
    CostDelta, GameParams, Penalty, Rational, Strategy as Buys, StrategyVector,
};
use proptest::prelude::*;

fn state_strategy(max_n: usize) -> impl Strategy<Value = StrategyVector> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<u64>(), n).prop_map(move |raw| {
            let strategies = raw
                .iter()
                .enumerate()
                .map(|(i, bits)| Buys::from_bits(bits & ((1 << n) - 1) & !(1 << i)))
                .collect();
            StrategyVector::new(strategies).unwrap()
        })
    })
}

fn params_strategy(n: usize) -> impl Strategy<Value = GameParams> {
    (1i128..40, 1i128..8, 0i128..40, prop::bool::weighted(0.2)).prop_map(
        move |(an, ad, bx, infinite)| {
            let beta = if infinite {
                Penalty::Infinite
            } else {
                Penalty::Finite(Rational::new(bx + 11, 10))
            };
            GameParams::new(n, Rational::new(an, ad), beta).unwrap()
        },
    )
}

fn state_and_params() -> impl Strategy<Value = (StrategyVector, GameParams)> {
    state_strategy(8).prop_flat_map(|s| {
        let n = s.n();
        (Just(s), params_strategy(n))
    })
}

/// Ordered-pair cost computed straight from the distance matrix.
fn pair_total(s: &StrategyVector, p: &GameParams) -> Cost {
    let d = all_pairs_distances(&induce_graph(s));
    let mut total = Cost::Finite(p.alpha * Rational::from_integer(s.total_purchases() as i128));
    for i in 0..s.n() {
        for j in 0..s.n() {
            if i == j {
                continue;
            }
            total += match (d.get(i, j), p.beta) {
                (Some(k), _) => Cost::Finite(Rational::from_integer(k as i128)),
                (None, Penalty::Finite(b)) => Cost::Finite(b),
                (None, Penalty::Infinite) => Cost::Infinite,
            };
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, ..ProptestConfig::default() })]

    #[test]
    fn distance_matrix_is_consistent(s in state_strategy(8)) {
        let g = induce_graph(&s);
        let d = all_pairs_distances(&g);
        let cd = components(&g);
        let n = s.n();
        for i in 0..n {
            prop_assert_eq!(d.get(i, i), Some(0));
            for j in 0..n {
                prop_assert_eq!(d.get(i, j), d.get(j, i));
                let same = cd.component_of(i).mask() >> j & 1 == 1;
                prop_assert_eq!(d.get(i, j).is_some(), same);
                if let Some(dij) = d.get(i, j) {
                    for k in 0..n {
                        if let (Some(dik), Some(dkj)) = (d.get(i, k), d.get(k, j)) {
                            prop_assert!(dij <= dik + dkj);
                        }
                    }
                }
            }
        }
        let sizes: usize = cd.components.iter().map(|c| c.size()).sum();
        prop_assert_eq!(sizes, n);
    }

    #[test]
    fn social_cost_decompositions_agree((s, p) in state_and_params()) {
        let total = social_cost(&s, &p);
        let sum: Cost = (0..s.n()).map(|i| individual_cost(&s, i, &p).total).sum();
        prop_assert_eq!(total, sum);
        prop_assert_eq!(total, pair_total(&s, &p));
    }

    #[test]
    fn breakdown_adds_up((s, p) in state_and_params()) {
        for i in 0..s.n() {
            let b = individual_cost(&s, i, &p);
            let recomputed = Cost::Finite(b.edge_cost)
                + Cost::Finite(Rational::from_integer(b.distance_cost as i128))
                + b.penalty_cost;
            prop_assert_eq!(b.total, recomputed);
            prop_assert_eq!(b.edge_cost, p.alpha * Rational::from_integer(s.strategy(i).len() as i128));
        }
    }

    #[test]
    fn ownership_does_not_change_social_cost((s, p) in state_and_params(), flip in any::<u64>()) {
        // Hand every singly-bought edge selected by `flip` to its other endpoint.
        let g = induce_graph(&s);
        let mut owned: Vec<Buys> = s.strategies().to_vec();
        for (k, e) in g.edges().iter().enumerate() {
            if flip >> (k % 64) & 1 == 0 || e.buyers.count() != 1 {
                continue;
            }
            let (from, to) = if e.buyers.low { (e.low, e.high) } else { (e.high, e.low) };
            owned[from].remove(to);
            owned[to].insert(from);
        }
        let moved = StrategyVector::new(owned).unwrap();
        prop_assert_eq!(social_cost(&s, &p), social_cost(&moved, &p));
    }

    #[test]
    fn classic_game_cost_is_infinite_iff_component_is_partial(s in state_strategy(8), a in 1i128..20) {
        let p = GameParams::new(s.n(), Rational::from_integer(a), Penalty::Infinite).unwrap();
        let cd = components(&induce_graph(&s));
        for i in 0..s.n() {
            let partial = cd.component_of(i).size() < s.n();
            prop_assert_eq!(individual_cost(&s, i, &p).total.is_infinite(), partial);
        }
    }

    #[test]
    fn identity_deviation_is_zero((s, p) in state_and_params()) {
        for i in 0..s.n() {
            prop_assert_eq!(cost_delta(&s, i, s.strategy(i), &p).unwrap(), CostDelta::Finite(Rational::from_integer(0)));
        }
    }
}
