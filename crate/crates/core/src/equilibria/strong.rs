use alloc::format;
use alloc::vec::Vec;

use super::{check_dims, guard_best_response, is_nash, CoalitionDeviation, EquilibriumReport, Witness};
use crate::cost::Scaled;
use crate::error::Error;
use crate::game::{GameParams, Strategy, StrategyVector};
use crate::graph::{adjacency, bfs_from, pairs};
use crate::subsets::CanonicalSubsets;
use crate::COALITION_MAX_EDGES;

/// Strong-equilibrium check over every coalition of at most `max_coalition`
/// players. A joint deviation blocks only if every member strictly gains.
///
/// Instead of walking joint strategy profiles, the search walks the set of
/// edges the coalition ends up paying for, then hands every edge between two
/// members to one of its endpoints so that every member is better off. Buying an
/// edge that already exists never lowers anyone's cost, so this covers
/// every blocking profile.
///
/// Coalitions are scanned by size and then lexicographically; within a
/// coalition, edge sets are scanned in canonical subset order over the
/// candidate pairs. The first blocking deviation found is the witness.
pub fn is_strong(
    state: &StrategyVector,
    params: &GameParams,
    max_coalition: usize,
) -> Result<EquilibriumReport, Error> {
    check_dims(state, params);
    guard_best_response(params.n)?;
    let n = params.n;
    if max_coalition == 0 || max_coalition > n {
        return Err(Error::InvalidParams(format!(
            "coalition size bound must lie in 1..={n}, got {max_coalition}"
        )));
    }
    let worst_edges = pairs_touching(n, max_coalition);
    if worst_edges > COALITION_MAX_EDGES {
        return Err(Error::Guard {
            what: "coalition candidate edges",
            limit: COALITION_MAX_EDGES,
            actual: worst_edges,
        });
    }

    let scaled = Scaled::new(params.alpha, params.beta);
    let search = CoalitionSearch::new(state, scaled);
    let everyone = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for coalition in CanonicalSubsets::new(everyone).skip(1) {
        if coalition.count_ones() as usize > max_coalition {
            break;
        }
        if let Some(dev) = search.blocking(coalition) {
            return Ok(EquilibriumReport {
                verdict: false,
                strict: false,
                witness: Some(Witness::Coalition(dev)),
            });
        }
    }
    let nash = is_nash(state, params)?;
    Ok(EquilibriumReport {
        verdict: true,
        strict: nash.strict,
        witness: None,
    })
}

/// Pairs with at least one endpoint among `k` of `n` players.
fn pairs_touching(n: usize, k: usize) -> usize {
    let outside = n - k;
    n * (n - 1) / 2 - outside * outside.saturating_sub(1) / 2
}

struct CoalitionSearch<'a> {
    state: &'a StrategyVector,
    scaled: Scaled,
    pairs: Vec<(usize, usize)>,
    old: Vec<i128>,
}

impl<'a> CoalitionSearch<'a> {
    fn new(state: &'a StrategyVector, scaled: Scaled) -> Self {
        let n = state.n();
        let adj = adjacency(state);
        let old = (0..n)
            .map(|i| {
                let (dist, reached) = bfs_from(&adj, i);
                let unreached = n as u32 - reached.count_ones();
                scaled.cost(state.strategy(i).len() as u32, dist, unreached)
            })
            .collect();
        CoalitionSearch {
            state,
            scaled,
            pairs: pairs(n),
            old,
        }
    }

    fn blocking(&self, coalition: u64) -> Option<CoalitionDeviation> {
        let n = self.state.n();
        let inside = |v: usize| coalition >> v & 1 == 1;

        // Edges paid for by players outside the coalition stay put.
        let mut fixed = alloc::vec![0u64; n];
        for j in (0..n).filter(|&j| !inside(j)) {
            for t in self.state.strategy(j).iter() {
                fixed[j] |= 1 << t;
                fixed[t] |= 1 << j;
            }
        }
        let candidates: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .copied()
            .filter(|&(a, b)| (inside(a) || inside(b)) && fixed[a] >> b & 1 == 0)
            .collect();
        debug_assert!(candidates.len() <= 64);

        let members: Vec<usize> = (0..n).filter(|&v| inside(v)).collect();
        let universe = if candidates.len() == 64 {
            u64::MAX
        } else {
            (1u64 << candidates.len()) - 1
        };
        let mut adj = alloc::vec![0u64; n];
        let mut caps = alloc::vec![0usize; n];
        let mut forced = alloc::vec![Strategy::EMPTY; n];
        let mut internal: Vec<(usize, usize)> = Vec::new();

        'edges: for chosen in CanonicalSubsets::new(universe) {
            adj.copy_from_slice(&fixed);
            internal.clear();
            for &m in &members {
                forced[m] = Strategy::EMPTY;
            }
            let mut bits = chosen;
            while bits != 0 {
                let (a, b) = candidates[bits.trailing_zeros() as usize];
                bits &= bits - 1;
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
                match (inside(a), inside(b)) {
                    (true, true) => internal.push((a, b)),
                    (true, false) => forced[a].insert(b),
                    (false, true) => forced[b].insert(a),
                    (false, false) => unreachable!("candidate edges touch the coalition"),
                }
            }

            for &m in &members {
                let (dist, reached) = bfs_from(&adj, m);
                let conn = self.scaled.connection(dist, n as u32 - reached.count_ones());
                if conn == Scaled::INF {
                    continue 'edges;
                }
                let old = self.old[m];
                caps[m] = if old == Scaled::INF {
                    internal.len()
                } else {
                    let slack = old - conn - self.scaled.alpha * forced[m].len() as i128;
                    if slack <= 0 {
                        continue 'edges;
                    }
                    // Largest a with alpha * a < slack.
                    ((slack - 1) / self.scaled.alpha) as usize
                };
            }

            let mut owner = alloc::vec![0usize; internal.len()];
            if assign(&internal, &mut caps, &mut owner, 0) {
                let mut strategies: Vec<Strategy> = members.iter().map(|&m| forced[m]).collect();
                for (&(a, b), &who) in internal.iter().zip(&owner) {
                    let (buyer, target) = if who == a { (a, b) } else { (b, a) };
                    let slot = members.iter().position(|&m| m == buyer).unwrap();
                    strategies[slot].insert(target);
                }
                let costs = members
                    .iter()
                    .zip(&strategies)
                    .map(|(&m, s)| {
                        let (dist, reached) = bfs_from(&adj, m);
                        let new = self
                            .scaled
                            .cost(s.len() as u32, dist, n as u32 - reached.count_ones());
                        (self.scaled.to_cost(self.old[m]), self.scaled.to_cost(new))
                    })
                    .collect();
                let dev = CoalitionDeviation {
                    coalition: members,
                    strategies,
                    costs,
                };
                debug_assert!(dev.is_blocking());
                return Some(dev);
            }
        }
        None
    }
}

/// Gives every edge to one of its endpoints without exceeding `caps`.
/// Tries the smaller endpoint first.
fn assign(edges: &[(usize, usize)], caps: &mut [usize], owner: &mut [usize], k: usize) -> bool {
    if k == edges.len() {
        return true;
    }
    let (a, b) = edges[k];
    for who in [a, b] {
        if caps[who] > 0 {
            caps[who] -= 1;
            owner[k] = who;
            let ok = assign(edges, caps, owner, k + 1);
            caps[who] += 1;
            if ok {
                return true;
            }
        }
    }
    false
}
