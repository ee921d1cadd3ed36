//! Exact-arithmetic engine for the penalized network creation game.
//!
//! Players are vertices; a strategy is a set of players to buy edges to at
//! price `alpha` each. A player pays the hop distance to every reachable
//! player and a finite penalty `beta` for every unreachable one. Setting
//! `beta` to [`Penalty::Infinite`] recovers the classic network creation
//! game, where any disconnection is infinitely expensive.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and the multi-threaded drivers live in the `pcg-cli` companion crate.
//!
//! ```
//! use pcg_core::{canonical_state, individual_cost, is_nash, CanonicalKind, GameParams, Penalty, Rational};
//!
//! let params = GameParams::new(4, Rational::from_integer(2), Penalty::Infinite).unwrap();
//! let star = canonical_state(CanonicalKind::CenterStar(0), 4).unwrap();
//! assert_eq!(individual_cost(&star, 0, &params).total.to_string(), "9");
//! assert!(is_nash(&star, &params).unwrap().verdict);
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod constructions;
mod cost;
mod dynamics;
mod equilibria;
mod error;
mod game;
mod graph;
mod subsets;
mod theory;

pub use constructions::{canonical_state, structure_classify, CanonicalKind, StructureLabel};
pub use cost::{Cost, CostDelta, Penalty, Rational};
pub use dynamics::{
    cycle_search, cycle_search_setup, cycle_search_trial, replay_witness, run, step, trial_seed, CycleWitness,
    DynamicsOutcome, DynamicsPolicy, MoveRule, PlayerOrder, Schedule, StepResult, TieRule,
};
pub use equilibria::{
    all_optimal_graphs, best_response, canonical_form, enumerate_equilibria, graph_is_isomorphic,
    is_nash, is_strong, price_metrics, social_optimum_bruteforce, social_optimum_limited,
    BestResponse, CoalitionDeviation, Deviation, EnumerationOptions, EnumerationResult,
    Enumerator, EquilibriumKind, EquilibriumReport, EquilibriumSet, PriceMetrics, PriceOutcome,
    ScanChunk, SocialOptimum, Witness,
};
pub use error::Error;
pub use game::{
    cost_delta, individual_cost, social_cost, CostBreakdown, GameParams, Strategy, StrategyVector,
    MAX_PLAYERS,
};
pub use graph::{
    all_pairs_distances, components, induce_graph, Buyers, Component, ComponentDecomposition,
    DistanceMatrix, Edge, InducedGraph,
};
pub use subsets::CanonicalSubsets;
pub use theory::{
    analytic_poa_bound, canonical_cost, compo_poa_decomposition, component_conditions,
    component_cost_lower_bound, disconnected_ne_region, nonempty_ne_bounds, region_report,
    social_optimum_class, BoundCheck, BoundEvaluation, BoundValue, ComponentPoa, CostLowerBound,
    Exclusion, OptimumClass, OptimumShape, PoaBound, PoaRegion, RegionReport, Relation, LOG_BASE,
};

/// Largest board the exhaustive best-response search accepts.
pub const BEST_RESPONSE_MAX_N: usize = 16;
/// Default largest board for the full strategy-vector scan.
pub const ENUMERATION_MAX_N: usize = 5;
/// Largest board the full scan accepts with an explicit override.
pub const ENUMERATION_OVERRIDE_MAX_N: usize = 6;
/// Largest board for the brute-force social optimum over all graphs.
pub const OPTIMUM_MAX_N: usize = 8;
/// Largest number of candidate edges a single coalition may re-wire.
pub const COALITION_MAX_EDGES: usize = 24;
