//! Relabeling classes of states and graph isomorphism for small boards.

use alloc::vec::Vec;

use crate::error::Error;
use crate::game::{Strategy, StrategyVector};
use crate::graph::InducedGraph;

/// Largest board the permutation-based canonical form accepts.
const CANONICAL_FORM_MAX_N: usize = 8;

fn relabel(state: &StrategyVector, perm: &[usize]) -> Vec<u64> {
    // Player `i` becomes `perm[i]`.
    let mut out = alloc::vec![0u64; perm.len()];
    for (i, &pi) in perm.iter().enumerate() {
        out[pi] = state.strategy(i).iter().fold(0u64, |acc, j| acc | 1 << perm[j]);
    }
    out
}

/// The lexicographically smallest relabeling of `state` over all player
/// permutations. Two states share a canonical form iff some renaming of
/// players maps one onto the other, ownership included.
pub fn canonical_form(state: &StrategyVector) -> Result<StrategyVector, Error> {
    let n = state.n();
    if n > CANONICAL_FORM_MAX_N {
        return Err(Error::Guard {
            what: "canonical form player count",
            limit: CANONICAL_FORM_MAX_N,
            actual: n,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = relabel(state, &perm);
    // Heap's algorithm, iterative form.
    let mut c = alloc::vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let candidate = relabel(state, &perm);
            if candidate < best {
                best = candidate;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(StrategyVector::from_raw(best.into_iter().map(Strategy::from_bits).collect()))
}

/// Whether two graphs are isomorphic, ignoring edge ownership.
pub fn graph_is_isomorphic(a: &InducedGraph, b: &InducedGraph) -> bool {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let (ua, ub) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = alloc::vec![usize::MAX; n];
    extend(a, b, &ua, &ub, 0, &mut map, 0)
}

fn extend(
    a: &InducedGraph,
    b: &InducedGraph,
    deg_a: &[usize],
    deg_b: &[usize],
    v: usize,
    map: &mut [usize],
    used: u64,
) -> bool {
    if v == a.n() {
        return true;
    }
    for w in 0..b.n() {
        if used >> w & 1 == 1 || deg_a[v] != deg_b[w] {
            continue;
        }
        let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if consistent {
            map[v] = w;
            if extend(a, b, deg_a, deg_b, v + 1, map, used | 1 << w) {
                return true;
            }
        }
    }
    map[v] = usize::MAX;
    false
}
