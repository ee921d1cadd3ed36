use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::cost::{Cost, CostDelta, Penalty, Rational};
use crate::error::Error;
use crate::graph::{adjacency, bfs_from};

/// Strategies are bit sets, so a board holds at most this many players.
pub const MAX_PLAYERS: usize = 64;

/// Player count, edge price and disconnection penalty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameParams {
    pub n: usize,
    pub alpha: Rational,
    pub beta: Penalty,
}

impl GameParams {
    /// Validates `n >= 2`, `alpha > 0` and `beta > 1` (or infinite).
    pub fn new(n: usize, alpha: Rational, beta: Penalty) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("n must be at least 2, got {n}")));
        }
        if n > MAX_PLAYERS {
            return Err(Error::InvalidParams(format!(
                "n must be at most {MAX_PLAYERS}, got {n}"
            )));
        }
        if alpha <= Rational::zero() {
            return Err(Error::InvalidParams(format!(
                "alpha must be positive (edge price alpha > 0), got {alpha}"
            )));
        }
        if let Penalty::Finite(b) = beta {
            if b <= Rational::one() {
                return Err(Error::InvalidParams(format!(
                    "beta must exceed 1 (penalty per disconnected pair beta > 1), got {b}"
                )));
            }
        }
        Ok(GameParams { n, alpha, beta })
    }

    pub fn with_n(&self, n: usize) -> Result<Self, Error> {
        GameParams::new(n, self.alpha, self.beta)
    }

    pub fn with_beta(&self, beta: Penalty) -> Result<Self, Error> {
        GameParams::new(self.n, self.alpha, beta)
    }
}

/// The set of players a player buys edges to, as a bit set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strategy(u64);

impl Strategy {
    pub const EMPTY: Strategy = Strategy(0);

    pub fn from_bits(bits: u64) -> Self {
        Strategy(bits)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, j: usize) -> bool {
        j < 64 && self.0 >> j & 1 == 1
    }

    pub fn insert(&mut self, j: usize) {
        self.0 |= 1 << j;
    }

    pub fn remove(&mut self, j: usize) {
        self.0 &= !(1 << j);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Targets in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (0..64).filter(move |j| bits >> j & 1 == 1)
    }
}

impl FromIterator<usize> for Strategy {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Strategy::EMPTY;
        for j in iter {
            s.insert(j);
        }
        s
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for j in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{j}")?;
            first = false;
        }
        Ok(())
    }
}

/// One strategy per player: the game state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyVector {
    strategies: Vec<Strategy>,
}

impl StrategyVector {
    pub fn new(strategies: Vec<Strategy>) -> Result<Self, Error> {
        let n = strategies.len();
        if n > MAX_PLAYERS {
            return Err(Error::InvalidStrategy(format!(
                "at most {MAX_PLAYERS} players supported, got {n}"
            )));
        }
        let in_range = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for (i, s) in strategies.iter().enumerate() {
            if s.contains(i) {
                return Err(Error::InvalidStrategy(format!("player {i} targets itself")));
            }
            if s.bits() & !in_range != 0 {
                return Err(Error::InvalidStrategy(format!(
                    "player {i} targets a player outside 0..{n}"
                )));
            }
        }
        Ok(StrategyVector { strategies })
    }

    /// Builds a state from target lists.
    pub fn from_targets(targets: &[&[usize]]) -> Result<Self, Error> {
        if let Some(&j) = targets.iter().flat_map(|t| t.iter()).find(|&&j| j >= 64) {
            return Err(Error::InvalidStrategy(format!("target {j} out of range")));
        }
        Self::new(targets.iter().map(|t| t.iter().copied().collect()).collect())
    }

    /// The empty state: nobody buys anything.
    pub fn empty(n: usize) -> Self {
        StrategyVector {
            strategies: alloc::vec![Strategy::EMPTY; n],
        }
    }

    pub(crate) fn from_raw(strategies: Vec<Strategy>) -> Self {
        StrategyVector { strategies }
    }

    pub fn n(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategy(&self, i: usize) -> Strategy {
        self.strategies[i]
    }

    pub fn strategies(&self) -> &[Strategy] {
        &self.strategies
    }

    /// Copy of the state with player `i` switched to `s`.
    pub fn with_strategy(&self, i: usize, s: Strategy) -> Result<Self, Error> {
        if s.contains(i) {
            return Err(Error::InvalidStrategy(format!("player {i} targets itself")));
        }
        if self.n() < 64 && s.bits() >> self.n() != 0 {
            return Err(Error::InvalidStrategy(format!(
                "player {i} targets a player outside 0..{}",
                self.n()
            )));
        }
        let mut next = self.clone();
        next.strategies[i] = s;
        Ok(next)
    }

    pub(crate) fn set(&mut self, i: usize, s: Strategy) {
        self.strategies[i] = s;
    }

    /// Sum of purchase counts; a doubly bought edge counts twice.
    pub fn total_purchases(&self) -> usize {
        self.strategies.iter().map(Strategy::len).sum()
    }
}

/// Individual cost split into its parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostBreakdown {
    pub edge_cost: Rational,
    pub distance_cost: u64,
    /// Number of players outside this player's component.
    pub unreachable: usize,
    pub penalty_cost: Cost,
    pub total: Cost,
}

fn check_dims(state: &StrategyVector, params: &GameParams) {
    assert_eq!(
        state.n(),
        params.n,
        "state has {} players but params say {}",
        state.n(),
        params.n
    );
}

/// Cost of player `i`: edges bought, distances to reachable players and
/// the penalty for the rest.
pub fn individual_cost(state: &StrategyVector, i: usize, params: &GameParams) -> CostBreakdown {
    check_dims(state, params);
    assert!(i < state.n(), "player {i} out of range");
    let adj = adjacency(state);
    breakdown(state.strategy(i).len(), &adj, i, params)
}

pub(crate) fn breakdown(
    purchases: usize,
    adj: &[u64],
    i: usize,
    params: &GameParams,
) -> CostBreakdown {
    let (dist, reached) = bfs_from(adj, i);
    let unreachable = adj.len() - reached.count_ones() as usize;
    let edge_cost = params.alpha * Rational::from_integer(purchases as i128);
    let penalty_cost = if unreachable == 0 {
        Cost::ZERO
    } else {
        match params.beta {
            Penalty::Finite(b) => Cost::Finite(b * Rational::from_integer(unreachable as i128)),
            Penalty::Infinite => Cost::Infinite,
        }
    };
    let total =
        Cost::Finite(edge_cost + Rational::from_integer(dist as i128)) + penalty_cost;
    CostBreakdown {
        edge_cost,
        distance_cost: dist as u64,
        unreachable,
        penalty_cost,
        total,
    }
}

/// Sum of all individual costs.
pub fn social_cost(state: &StrategyVector, params: &GameParams) -> Cost {
    check_dims(state, params);
    let adj = adjacency(state);
    (0..state.n())
        .map(|i| breakdown(state.strategy(i).len(), &adj, i, params).total)
        .sum()
}

/// Change of player `i`'s cost when it switches to `new_strategy`.
pub fn cost_delta(
    state: &StrategyVector,
    i: usize,
    new_strategy: Strategy,
    params: &GameParams,
) -> Result<CostDelta, Error> {
    let before = individual_cost(state, i, params).total;
    let next = state.with_strategy(i, new_strategy)?;
    let after = individual_cost(&next, i, params).total;
    Ok(after.delta_from(&before))
}
