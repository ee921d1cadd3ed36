//! Best responses, Nash and strong equilibrium checks, exhaustive
//! enumeration and price metrics.

use alloc::vec::Vec;

use crate::cost::{Cost, Scaled};
use crate::error::Error;
use crate::game::{GameParams, Strategy, StrategyVector};
use crate::graph::{adjacency, bfs_from};
use crate::subsets::CanonicalSubsets;
use crate::BEST_RESPONSE_MAX_N;

mod enumerate;
mod iso;
mod optimum;
mod strong;
pub(crate) mod table;

pub use enumerate::{
    enumerate_equilibria, price_metrics, EnumerationOptions, EnumerationResult, Enumerator,
    EquilibriumKind, EquilibriumSet, PriceMetrics, PriceOutcome, ScanChunk,
};
pub use iso::{canonical_form, graph_is_isomorphic};
pub use optimum::{all_optimal_graphs, social_optimum_bruteforce, social_optimum_limited, SocialOptimum};
pub use strong::is_strong;

/// A unilateral strategy change with its exact effect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub player: usize,
    pub strategy: Strategy,
    pub old_cost: Cost,
    pub new_cost: Cost,
}

/// A joint change by a coalition. Blocking iff every member strictly gains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionDeviation {
    /// Members in ascending order.
    pub coalition: Vec<usize>,
    /// New strategy per member, parallel to `coalition`.
    pub strategies: Vec<Strategy>,
    /// `(old, new)` cost per member.
    pub costs: Vec<(Cost, Cost)>,
}

impl CoalitionDeviation {
    pub fn is_blocking(&self) -> bool {
        self.costs.iter().all(|(old, new)| new < old)
    }

    /// The state after the coalition moves.
    pub fn apply(&self, state: &StrategyVector) -> StrategyVector {
        let mut next = state.clone();
        for (&i, &s) in self.coalition.iter().zip(&self.strategies) {
            next.set(i, s);
        }
        next
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Unilateral(Deviation),
    Coalition(CoalitionDeviation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub verdict: bool,
    /// No player has a cost-neutral alternative. Only meaningful when
    /// `verdict` holds.
    pub strict: bool,
    pub witness: Option<Witness>,
}

/// Exact minimum cost of player `i` with everyone else fixed, and every
/// minimizing strategy in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    pub min_cost: Cost,
    pub minimizers: Vec<Strategy>,
}

pub(crate) fn guard_best_response(n: usize) -> Result<(), Error> {
    if n > BEST_RESPONSE_MAX_N {
        return Err(Error::Guard {
            what: "best-response search",
            limit: BEST_RESPONSE_MAX_N,
            actual: n,
        });
    }
    Ok(())
}

/// Evaluates player `i`'s scaled cost for arbitrary strategies against a
/// fixed background of the other players' edges.
pub(crate) struct UnilateralEvaluator {
    base: Vec<u64>,
    player: usize,
    scaled: Scaled,
}

impl UnilateralEvaluator {
    pub fn new(state: &StrategyVector, player: usize, scaled: Scaled) -> Self {
        let mut others = state.clone();
        others.set(player, Strategy::EMPTY);
        UnilateralEvaluator {
            base: adjacency(&others),
            player,
            scaled,
        }
    }

    /// Only the source's own row changes: edges back into the source never
    /// matter for a search that starts there.
    #[inline]
    pub fn cost(&mut self, s: Strategy) -> i128 {
        let own = self.base[self.player];
        self.base[self.player] = own | s.bits();
        let (dist, reached) = bfs_from(&self.base, self.player);
        self.base[self.player] = own;
        let unreached = self.base.len() as u32 - reached.count_ones();
        self.scaled.cost(s.len() as u32, dist, unreached)
    }

    pub fn candidates(&self) -> CanonicalSubsets {
        let n = self.base.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        CanonicalSubsets::new(all & !(1 << self.player))
    }
}

fn check_dims(state: &StrategyVector, params: &GameParams) {
    assert_eq!(state.n(), params.n, "state and params disagree on n");
}

pub fn best_response(
    state: &StrategyVector,
    player: usize,
    params: &GameParams,
) -> Result<BestResponse, Error> {
    check_dims(state, params);
    guard_best_response(params.n)?;
    assert!(player < params.n, "player {player} out of range");
    let scaled = Scaled::new(params.alpha, params.beta);
    let mut eval = UnilateralEvaluator::new(state, player, scaled);
    let mut best = Scaled::INF;
    let mut minimizers = Vec::new();
    for bits in eval.candidates() {
        let s = Strategy::from_bits(bits);
        let c = eval.cost(s);
        if c < best {
            best = c;
            minimizers.clear();
        }
        if c == best {
            minimizers.push(s);
        }
    }
    Ok(BestResponse {
        min_cost: scaled.to_cost(best),
        minimizers,
    })
}

/// Nash check. The witness is the first strictly improving deviation with
/// players scanned in ascending order and strategies in canonical order.
pub fn is_nash(state: &StrategyVector, params: &GameParams) -> Result<EquilibriumReport, Error> {
    check_dims(state, params);
    guard_best_response(params.n)?;
    let scaled = Scaled::new(params.alpha, params.beta);
    let mut strict = true;
    for player in 0..params.n {
        let mut eval = UnilateralEvaluator::new(state, player, scaled);
        let current = state.strategy(player);
        let old = eval.cost(current);
        for bits in eval.candidates() {
            let s = Strategy::from_bits(bits);
            if s == current {
                continue;
            }
            let c = eval.cost(s);
            if c < old {
                return Ok(EquilibriumReport {
                    verdict: false,
                    strict: false,
                    witness: Some(Witness::Unilateral(Deviation {
                        player,
                        strategy: s,
                        old_cost: scaled.to_cost(old),
                        new_cost: scaled.to_cost(c),
                    })),
                });
            }
            if c == old {
                strict = false;
            }
        }
    }
    Ok(EquilibriumReport {
        verdict: true,
        strict,
        witness: None,
    })
}
