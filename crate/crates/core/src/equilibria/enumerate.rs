use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::ops::Range;

use super::iso::canonical_form;
use super::optimum::{social_optimum_bruteforce, SocialOptimum};
use super::strong::is_strong;
use super::table::{expand, NashTable};
use crate::cost::{Cost, Rational, Scaled};
use crate::error::Error;
use crate::game::{GameParams, Strategy, StrategyVector};
use crate::{ENUMERATION_MAX_N, ENUMERATION_OVERRIDE_MAX_N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquilibriumKind {
    Nash,
    Strong,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Lifts the player bound from 5 to 6.
    pub allow_six: bool,
    /// Also report one representative per player-relabeling class.
    pub dedupe_iso: bool,
}

/// Output of one contiguous slice of the state index space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanChunk {
    pub range: Range<u64>,
    /// Nash states as `(index, scaled social cost)`.
    pub nash: Vec<(u64, i128)>,
    /// Indices of the Nash states that are also strong, when requested.
    pub strong: Vec<u64>,
}

/// Equilibria of one kind with their costs and price ratios.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumSet {
    pub states: Vec<StrategyVector>,
    pub costs: Vec<Cost>,
    pub worst: Option<Cost>,
    pub best: Option<Cost>,
    /// Worst equilibrium cost over optimum cost.
    pub poa: Option<Rational>,
    /// Best equilibrium cost over optimum cost.
    pub pos: Option<Rational>,
    /// First member of each relabeling class, in index order.
    pub representatives: Option<Vec<StrategyVector>>,
}

impl EquilibriumSet {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn contains(&self, state: &StrategyVector) -> bool {
        self.states.contains(state)
    }

    pub fn worst_state(&self) -> Option<&StrategyVector> {
        let worst = self.worst?;
        self.states.iter().zip(&self.costs).find(|(_, &c)| c == worst).map(|(s, _)| s)
    }

    pub fn best_state(&self) -> Option<&StrategyVector> {
        let best = self.best?;
        self.states.iter().zip(&self.costs).find(|(_, &c)| c == best).map(|(s, _)| s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub params: GameParams,
    pub kind: EquilibriumKind,
    pub states_examined: u64,
    pub nash: EquilibriumSet,
    /// Present when `kind` is `Strong`.
    pub strong: Option<EquilibriumSet>,
    pub optimum: SocialOptimum,
}

impl EnumerationResult {
    /// The equilibria of the requested kind.
    pub fn equilibria(&self) -> &EquilibriumSet {
        match self.kind {
            EquilibriumKind::Nash => &self.nash,
            EquilibriumKind::Strong => self.strong.as_ref().expect("strong scan fills this"),
        }
    }
}

/// Exhaustive scan over every strategy vector, split into index ranges so
/// that callers may process ranges in parallel and merge them in order.
///
/// State index `k` encodes player `i`'s strategy in bits
/// `i*(n-1) .. (i+1)*(n-1)`, with player `i` itself skipped.
pub struct Enumerator {
    params: GameParams,
    kind: EquilibriumKind,
    options: EnumerationOptions,
    table: NashTable,
}

impl core::fmt::Debug for Enumerator {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Enumerator")
            .field("params", &self.params)
            .field("kind", &self.kind)
            .field("options", &self.options)
            .finish_non_exhaustive()
    }
}

impl Enumerator {
    pub fn new(
        params: GameParams,
        kind: EquilibriumKind,
        options: EnumerationOptions,
    ) -> Result<Self, Error> {
        let limit = if options.allow_six {
            ENUMERATION_OVERRIDE_MAX_N
        } else {
            ENUMERATION_MAX_N
        };
        if params.n > limit {
            return Err(Error::Guard {
                what: "exhaustive enumeration player count",
                limit,
                actual: params.n,
            });
        }
        let table = NashTable::new(params.n, Scaled::new(params.alpha, params.beta));
        Ok(Enumerator {
            params,
            kind,
            options,
            table,
        })
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn state_count(&self) -> u64 {
        1u64 << (self.params.n * (self.params.n - 1))
    }

    pub fn decode(&self, index: u64) -> StrategyVector {
        let n = self.params.n;
        let per = n - 1;
        let s = (0..n)
            .map(|i| Strategy::from_bits(expand(i, (index >> (i * per)) & ((1 << per) - 1))))
            .collect();
        StrategyVector::from_raw(s)
    }

    pub fn encode(&self, state: &StrategyVector) -> u64 {
        let n = self.params.n;
        let per = n - 1;
        (0..n).fold(0u64, |acc, i| {
            let bits = state.strategy(i).bits();
            let code = (bits & ((1 << i) - 1)) | (bits >> (i + 1) << i);
            acc | code << (i * per)
        })
    }

    pub fn scan(&self, range: Range<u64>) -> ScanChunk {
        let n = self.params.n;
        let per = n - 1;
        let code_mask = (1u64 << per) - 1;
        let mut codes = [0u64; 6];
        let mut nash = Vec::new();
        let mut strong = Vec::new();
        for index in range.clone() {
            for (i, c) in codes.iter_mut().enumerate().take(n) {
                *c = (index >> (i * per)) & code_mask;
            }
            let Some(social) = self.table.nash_cost(&codes[..n]) else {
                continue;
            };
            nash.push((index, social));
            if self.kind == EquilibriumKind::Strong {
                let state = self.decode(index);
                let report = is_strong(&state, &self.params, n)
                    .expect("board size already passed the enumeration guard");
                if report.verdict {
                    strong.push(index);
                }
            }
        }
        ScanChunk { range, nash, strong }
    }

    /// Splits the index space into `parts` contiguous ranges.
    pub fn split(&self, parts: usize) -> Vec<Range<u64>> {
        let total = self.state_count();
        let parts = (parts.max(1) as u64).min(total);
        (0..parts)
            .map(|p| (total * p / parts)..(total * (p + 1) / parts))
            .collect()
    }

    /// Merges chunks covering the whole index space. Chunks may arrive in
    /// any order; the output depends only on their contents.
    pub fn finish(&self, mut chunks: Vec<ScanChunk>) -> Result<EnumerationResult, Error> {
        chunks.sort_by_key(|c| c.range.start);
        let covered: u64 = chunks.iter().map(|c| c.range.end - c.range.start).sum();
        let contiguous = chunks.windows(2).all(|w| w[0].range.end == w[1].range.start);
        assert!(
            contiguous && covered == self.state_count() && chunks.first().is_some_and(|c| c.range.start == 0),
            "chunks must tile the state index space"
        );

        let optimum = social_optimum_bruteforce(&self.params)?;
        let opt = optimum.cost;
        let scaled = self.table.scaled;
        let all: Vec<(u64, i128)> = chunks.iter().flat_map(|c| c.nash.iter().copied()).collect();
        let nash = self.build_set(all.iter().copied(), scaled, opt)?;
        let strong = match self.kind {
            EquilibriumKind::Nash => None,
            EquilibriumKind::Strong => {
                let marks: BTreeSet<u64> =
                    chunks.iter().flat_map(|c| c.strong.iter().copied()).collect();
                let picked = all.iter().copied().filter(|(k, _)| marks.contains(k));
                Some(self.build_set(picked, scaled, opt)?)
            }
        };
        Ok(EnumerationResult {
            params: self.params,
            kind: self.kind,
            states_examined: covered,
            nash,
            strong,
            optimum,
        })
    }

    fn build_set(
        &self,
        found: impl Iterator<Item = (u64, i128)>,
        scaled: Scaled,
        optimum: Cost,
    ) -> Result<EquilibriumSet, Error> {
        let mut states = Vec::new();
        let mut costs = Vec::new();
        for (index, social) in found {
            states.push(self.decode(index));
            costs.push(scaled.to_cost(social));
        }
        let worst = costs.iter().max().copied();
        let best = costs.iter().min().copied();
        let ratio = |c: Option<Cost>| match (c, optimum) {
            (Some(Cost::Finite(c)), Cost::Finite(o)) => Some(c / o),
            _ => None,
        };
        let representatives = if self.options.dedupe_iso {
            let mut seen = BTreeSet::new();
            let mut reps = Vec::new();
            for s in &states {
                if seen.insert(canonical_form(s)?) {
                    reps.push(s.clone());
                }
            }
            Some(reps)
        } else {
            None
        };
        Ok(EquilibriumSet {
            poa: ratio(worst),
            pos: ratio(best),
            states,
            costs,
            worst,
            best,
            representatives,
        })
    }
}

/// Sequential exhaustive scan of every strategy vector.
pub fn enumerate_equilibria(
    params: &GameParams,
    kind: EquilibriumKind,
    options: EnumerationOptions,
) -> Result<EnumerationResult, Error> {
    let e = Enumerator::new(*params, kind, options)?;
    let chunk = e.scan(0..e.state_count());
    e.finish(alloc::vec![chunk])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceMetrics {
    pub poa: Rational,
    pub pos: Rational,
    pub worst_state: StrategyVector,
    pub best_state: StrategyVector,
    pub worst_cost: Cost,
    pub best_cost: Cost,
    pub optimum_cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PriceOutcome {
    Measured(PriceMetrics),
    /// No equilibrium of the requested kind exists on this board.
    NoneFound,
}

impl PriceOutcome {
    pub fn from_result(result: &EnumerationResult) -> PriceOutcome {
        let set = result.equilibria();
        match (set.poa, set.pos, set.worst_state(), set.best_state()) {
            (Some(poa), Some(pos), Some(w), Some(b)) => PriceOutcome::Measured(PriceMetrics {
                poa,
                pos,
                worst_state: w.clone(),
                best_state: b.clone(),
                worst_cost: set.worst.unwrap_or(Cost::Infinite),
                best_cost: set.best.unwrap_or(Cost::Infinite),
                optimum_cost: result.optimum.cost,
            }),
            _ => PriceOutcome::NoneFound,
        }
    }
}

/// Prices of anarchy and stability by exhaustive enumeration.
pub fn price_metrics(params: &GameParams, kind: EquilibriumKind) -> Result<PriceOutcome, Error> {
    let result = enumerate_equilibria(params, kind, EnumerationOptions::default())?;
    Ok(PriceOutcome::from_result(&result))
}
