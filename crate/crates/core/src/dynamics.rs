//! Response dynamics with exact revisit detection.
//!
//! Players are activated one at a time along a periodic schedule. A
//! trajectory is identified by `(state, schedule position)`; revisiting such
//! a pair proves the trajectory is periodic from the first visit on.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Scaled;
use crate::equilibria::{guard_best_response, Deviation, UnilateralEvaluator};
use crate::error::Error;
use crate::game::{GameParams, Strategy, StrategyVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveRule {
    /// Switch to a best response.
    BestResponse,
    /// Switch to the first strictly improving strategy in canonical order.
    FirstImproving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlayerOrder {
    RoundRobin,
    /// One permutation of the players drawn from the seed, repeated every
    /// round.
    RandomPermutation(u64),
}

/// Which best response to take when several tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TieRule {
    /// Stay put if the current strategy is already a best response;
    /// otherwise take the first minimizer in canonical order.
    PreferCurrent,
    /// Always take the first minimizer in canonical order, even when that
    /// is a cost-neutral change.
    CanonicalFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DynamicsPolicy {
    pub move_rule: MoveRule,
    pub order: PlayerOrder,
    pub tie: TieRule,
    /// Maximum number of player activations.
    pub max_steps: u64,
}

impl Default for DynamicsPolicy {
    fn default() -> Self {
        DynamicsPolicy {
            move_rule: MoveRule::BestResponse,
            order: PlayerOrder::RoundRobin,
            tie: TieRule::PreferCurrent,
            max_steps: 10_000,
        }
    }
}

/// The periodic activation order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    sequence: Vec<usize>,
}

impl Schedule {
    pub fn new(order: PlayerOrder, n: usize) -> Self {
        let mut sequence: Vec<usize> = (0..n).collect();
        if let PlayerOrder::RandomPermutation(seed) = order {
            sequence.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        Schedule { sequence }
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn player_at(&self, position: usize) -> usize {
        self.sequence[position % self.sequence.len()]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    pub state: StrategyVector,
    /// The change made, if the player moved.
    pub deviation: Option<Deviation>,
}

/// Activates `player` once under `policy`.
pub fn step(
    state: &StrategyVector,
    player: usize,
    policy: &DynamicsPolicy,
    params: &GameParams,
) -> Result<StepResult, Error> {
    assert_eq!(state.n(), params.n, "state and params disagree on n");
    assert!(player < params.n, "player {player} out of range");
    guard_best_response(params.n)?;
    let scaled = Scaled::new(params.alpha, params.beta);
    let mut eval = UnilateralEvaluator::new(state, player, scaled);
    let current = state.strategy(player);
    let old = eval.cost(current);

    let target = match policy.move_rule {
        MoveRule::FirstImproving => {
            let mut found = None;
            for bits in eval.candidates() {
                let s = Strategy::from_bits(bits);
                let c = eval.cost(s);
                if c < old {
                    found = Some((s, c));
                    break;
                }
            }
            found
        }
        MoveRule::BestResponse => {
            let mut best: Option<(Strategy, i128)> = None;
            for bits in eval.candidates() {
                let s = Strategy::from_bits(bits);
                let c = eval.cost(s);
                if best.is_none_or(|(_, b)| c < b) {
                    best = Some((s, c));
                }
            }
            let (s, c) = best.expect("the empty strategy is always a candidate");
            let moves = match policy.tie {
                TieRule::PreferCurrent => c < old,
                TieRule::CanonicalFirst => s != current,
            };
            moves.then_some((s, c))
        }
    };

    Ok(match target {
        Some((s, c)) => StepResult {
            state: state.with_strategy(player, s)?,
            deviation: Some(Deviation {
                player,
                strategy: s,
                old_cost: scaled.to_cost(old),
                new_cost: scaled.to_cost(c),
            }),
        },
        None => StepResult {
            state: state.clone(),
            deviation: None,
        },
    })
}

/// A periodic stretch of a trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    /// Activation index at which the periodic stretch starts.
    pub entry: u64,
    /// Number of activations per period.
    pub period: u64,
    /// Schedule position of the first activation in the period.
    pub start_position: usize,
    pub schedule: Schedule,
    /// State before each activation of one period; the state after the last
    /// activation is `states[0]` again.
    pub states: Vec<StrategyVector>,
    /// What each activation did.
    pub moves: Vec<Option<Deviation>>,
}

impl CycleWitness {
    pub fn move_count(&self) -> usize {
        self.moves.iter().filter(|m| m.is_some()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DynamicsOutcome {
    /// A full round with no move. `moves` counts the changes made.
    Converged {
        state: StrategyVector,
        moves: u64,
        activations: u64,
    },
    CycleDetected(CycleWitness),
    BudgetExhausted {
        state: StrategyVector,
        moves: u64,
        activations: u64,
    },
}

pub fn run(
    start: &StrategyVector,
    policy: &DynamicsPolicy,
    params: &GameParams,
) -> Result<DynamicsOutcome, Error> {
    let schedule = Schedule::new(policy.order, params.n);
    let period = schedule.len();
    let mut seen: BTreeMap<(StrategyVector, usize), u64> = BTreeMap::new();
    let mut trail: Vec<(StrategyVector, Option<Deviation>)> = Vec::new();
    let mut state = start.clone();
    let mut idle = 0usize;
    let mut moves = 0u64;
    let mut t = 0u64;
    loop {
        if idle >= period {
            return Ok(DynamicsOutcome::Converged {
                state,
                moves,
                activations: t,
            });
        }
        let position = (t % period as u64) as usize;
        if let Some(&first) = seen.get(&(state.clone(), position)) {
            let tail = &trail[first as usize..];
            return Ok(DynamicsOutcome::CycleDetected(CycleWitness {
                entry: first,
                period: t - first,
                start_position: (first % period as u64) as usize,
                schedule,
                states: tail.iter().map(|(s, _)| s.clone()).collect(),
                moves: tail.iter().map(|(_, m)| m.clone()).collect(),
            }));
        }
        if t >= policy.max_steps {
            return Ok(DynamicsOutcome::BudgetExhausted {
                state,
                moves,
                activations: t,
            });
        }
        seen.insert((state.clone(), position), t);
        let r = step(&state, schedule.player_at(position), policy, params)?;
        if r.deviation.is_some() {
            moves += 1;
            idle = 0;
        } else {
            idle += 1;
        }
        trail.push((state, r.deviation));
        state = r.state;
        t += 1;
    }
}

/// Re-runs one period of `witness` and checks that it reproduces every
/// recorded state and move and returns to its first state.
pub fn replay_witness(
    witness: &CycleWitness,
    policy: &DynamicsPolicy,
    params: &GameParams,
) -> Result<bool, Error> {
    if witness.states.is_empty() || witness.states.len() as u64 != witness.period {
        return Ok(false);
    }
    let mut state = witness.states[0].clone();
    for k in 0..witness.states.len() {
        if state != witness.states[k] {
            return Ok(false);
        }
        let player = witness.schedule.player_at(witness.start_position + k);
        let r = step(&state, player, policy, params)?;
        if r.deviation != witness.moves[k] {
            return Ok(false);
        }
        state = r.state;
    }
    Ok(state == witness.states[0])
}

/// Seed of trial `index` derived from `master` (SplitMix64 finalizer).
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random start state and first-improving policy of one search trial,
/// both drawn from `seed`.
pub fn cycle_search_setup(
    params: &GameParams,
    seed: u64,
    max_steps: u64,
) -> (StrategyVector, DynamicsPolicy) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n;
    let density: f64 = rng.gen_range(0.05..0.6);
    let strategies = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && rng.gen_bool(density))
                .collect::<Strategy>()
        })
        .collect();
    let policy = DynamicsPolicy {
        move_rule: MoveRule::FirstImproving,
        order: PlayerOrder::RandomPermutation(rng.gen()),
        tie: TieRule::PreferCurrent,
        max_steps,
    };
    (StrategyVector::from_raw(strategies), policy)
}

/// One trial of [`cycle_search`].
pub fn cycle_search_trial(
    params: &GameParams,
    seed: u64,
    max_steps: u64,
) -> Result<Option<CycleWitness>, Error> {
    guard_best_response(params.n)?;
    let (start, policy) = cycle_search_setup(params, seed, max_steps);
    Ok(match run(&start, &policy, params)? {
        DynamicsOutcome::CycleDetected(w) => Some(w),
        _ => None,
    })
}

/// Runs trials `0..trials` in order and returns the first cycle found with
/// its trial index.
pub fn cycle_search(
    params: &GameParams,
    trials: u64,
    seed: u64,
    max_steps: u64,
) -> Result<Option<(u64, CycleWitness)>, Error> {
    for t in 0..trials {
        if let Some(w) = cycle_search_trial(params, trial_seed(seed, t), max_steps)? {
            return Ok(Some((t, w)));
        }
    }
    Ok(None)
}
