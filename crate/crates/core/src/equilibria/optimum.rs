//! Brute-force social optimum over all simple graphs.
//!
//! Social cost ignores who pays for an edge, so the search runs over edge
//! sets rather than strategy vectors. A graph is summarized by its edge
//! count, its ordered-pair distance total and its count of ordered
//! disconnected pairs; the cost under any `(alpha, beta)` is linear in that
//! triple, so each distinct triple is kept once with its smallest edge mask.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cost::{Cost, Rational, Scaled};
use crate::error::Error;
use crate::game::{GameParams, Strategy, StrategyVector};
use crate::graph::{adjacency_of_mask, bfs_from, pairs};
use crate::OPTIMUM_MAX_N;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocialOptimum {
    pub cost: Cost,
    /// First optimal graph in edge-mask order, every edge bought by its
    /// lower endpoint.
    pub state: StrategyVector,
    /// Number of distinct graphs attaining the optimum.
    pub tied: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    edges: u32,
    distance: u64,
    unreached: u64,
}

fn signature(pair_list: &[(usize, usize)], n: usize, mask: u64) -> Signature {
    let adj = adjacency_of_mask(pair_list, n, mask);
    let mut distance = 0u64;
    let mut unreached = 0u64;
    for v in 0..n {
        let (d, reached) = bfs_from(&adj, v);
        distance += d as u64;
        unreached += (n as u32 - reached.count_ones()) as u64;
    }
    Signature {
        edges: mask.count_ones(),
        distance,
        unreached,
    }
}

fn price(sig: &Signature, scaled: &Scaled) -> i128 {
    if sig.unreached > 0 && scaled.beta.is_none() {
        return Scaled::INF;
    }
    scaled.alpha * sig.edges as i128
        + scaled.unit * sig.distance as i128
        + scaled.beta.unwrap_or(0) * sig.unreached as i128
}

fn min_id_state(n: usize, pair_list: &[(usize, usize)], mask: u64) -> StrategyVector {
    let mut s = alloc::vec![Strategy::EMPTY; n];
    let mut m = mask;
    while m != 0 {
        let (a, b) = pair_list[m.trailing_zeros() as usize];
        m &= m - 1;
        s[a].insert(b);
    }
    StrategyVector::from_raw(s)
}

/// Every distinct graph signature with the count of graphs sharing it and
/// the smallest mask among them.
fn profile(n: usize) -> BTreeMap<Signature, (u64, u64)> {
    let pair_list = pairs(n);
    let graphs = 1u64 << pair_list.len();
    let mut out: BTreeMap<Signature, (u64, u64)> = BTreeMap::new();
    for mask in 0..graphs {
        let sig = signature(&pair_list, n, mask);
        out.entry(sig)
            .and_modify(|(count, _)| *count += 1)
            .or_insert((1, mask));
    }
    out
}

/// Social optimum with a caller-chosen bound on `n` instead of the default.
pub fn social_optimum_limited(params: &GameParams, max_n: usize) -> Result<SocialOptimum, Error> {
    if params.n > max_n {
        return Err(Error::Guard {
            what: "social optimum player count",
            limit: max_n,
            actual: params.n,
        });
    }
    let n = params.n;
    let scaled = Scaled::new(params.alpha, params.beta);
    let mut best = Scaled::INF;
    let mut mask = u64::MAX;
    let mut tied = 0u64;
    for (sig, (count, first)) in profile(n) {
        let c = price(&sig, &scaled);
        if c < best {
            best = c;
            mask = first;
            tied = count;
        } else if c == best {
            mask = mask.min(first);
            tied += count;
        }
    }
    Ok(SocialOptimum {
        cost: scaled.to_cost(best),
        state: min_id_state(n, &pairs(n), mask),
        tied,
    })
}

/// Exact minimum social cost over all `2^(n(n-1)/2)` graphs, `n <= 8`.
pub fn social_optimum_bruteforce(params: &GameParams) -> Result<SocialOptimum, Error> {
    social_optimum_limited(params, OPTIMUM_MAX_N)
}

/// Every optimal graph as a min-id-owned state, in edge-mask order.
pub fn all_optimal_graphs(params: &GameParams) -> Result<Vec<StrategyVector>, Error> {
    let opt = social_optimum_bruteforce(params)?;
    let n = params.n;
    let scaled = Scaled::new(params.alpha, params.beta);
    let target = match opt.cost {
        Cost::Infinite => Scaled::INF,
        Cost::Finite(c) => (c * Rational::from_integer(scaled.unit)).to_integer(),
    };
    let pair_list = pairs(n);
    let mut out = Vec::new();
    for mask in 0..1u64 << pair_list.len() {
        if price(&signature(&pair_list, n, mask), &scaled) == target {
            out.push(min_id_state(n, &pair_list, mask));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{canonical_state, CanonicalKind};
    use crate::cost::Penalty;
    use crate::game::social_cost;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn opt(n: usize, a: Rational, b: Penalty) -> (GameParams, SocialOptimum) {
        let p = GameParams::new(n, a, b).unwrap();
        (p, social_optimum_bruteforce(&p).unwrap())
    }

    #[test]
    fn star_region() {
        let (p, o) = opt(5, q(3, 1), Penalty::Finite(q(5, 2)));
        assert_eq!(o.cost, Cost::Finite(q(44, 1)));
        let star = canonical_state(CanonicalKind::CenterStar(0), 5).unwrap();
        assert_eq!(social_cost(&star, &p), o.cost);
        assert_eq!(social_cost(&o.state, &p), o.cost);
    }

    #[test]
    fn complete_region() {
        let (_, o) = opt(5, q(1, 1), Penalty::Finite(q(2, 1)));
        assert_eq!(o.cost, Cost::Finite(q(30, 1)));
        assert_eq!(o.state, canonical_state(CanonicalKind::Complete, 5).unwrap());
    }

    #[test]
    fn empty_region() {
        let (_, o) = opt(5, q(3, 1), Penalty::Finite(q(3, 2)));
        assert_eq!(o.cost, Cost::Finite(q(30, 1)));
        assert_eq!(o.state, StrategyVector::empty(5));
        assert_eq!(o.tied, 1);
    }

    #[test]
    fn classic_game_optimum_is_connected() {
        let (p, o) = opt(4, q(5, 1), Penalty::Infinite);
        assert_eq!(social_cost(&o.state, &p), o.cost);
        assert!(!o.cost.is_infinite());
    }

    #[test]
    fn ties_are_all_listed() {
        let p = GameParams::new(3, q(2, 1), Penalty::Finite(q(2, 1))).unwrap();
        let all = all_optimal_graphs(&p).unwrap();
        // Every pair costs 4 whether adjacent, at distance 2 or disconnected.
        assert_eq!(all.len(), 8);
        assert_eq!(social_optimum_bruteforce(&p).unwrap().tied, 8);
    }

    #[test]
    fn guard() {
        let p = GameParams::new(9, q(1, 1), Penalty::Infinite).unwrap();
        assert!(social_optimum_bruteforce(&p).unwrap_err().is_guard());
        assert!(social_optimum_limited(&p, 8).unwrap_err().is_guard());
    }
}
