//! Multi-threaded drivers over the single-threaded core searches.
//!
//! Work is cut into more pieces than threads and handed out through an
//! atomic counter; results are reassembled by piece index, so the output
//! never depends on the thread count or on scheduling.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use pcg_core::{
    cycle_search_trial, trial_seed, CycleWitness, EnumerationOptions, EnumerationResult, Enumerator,
    EquilibriumKind, Error, GameParams,
};

/// Chunks handed out per worker; small chunks keep the load balanced when
/// strong checks cluster in one region of the index space.
const CHUNKS_PER_WORKER: usize = 16;

/// Lowest-index trial outcome seen so far: a witness or the error that
/// stopped a trial.
type FirstHit = Result<Option<(u64, CycleWitness)>, (u64, Error)>;

fn worker_count(workers: usize) -> usize {
    workers.max(1)
}

/// Full equilibrium scan split across `workers` threads.
pub fn enumerate_parallel(
    params: GameParams,
    kind: EquilibriumKind,
    options: EnumerationOptions,
    workers: usize,
) -> Result<EnumerationResult, Error> {
    let enumerator = Enumerator::new(params, kind, options)?;
    let workers = worker_count(workers);
    if workers == 1 {
        let all = enumerator.scan(0..enumerator.state_count());
        return enumerator.finish(vec![all]);
    }
    let ranges = enumerator.split(workers * CHUNKS_PER_WORKER);
    let next = AtomicUsize::new(0);
    let chunks = Mutex::new(Vec::with_capacity(ranges.len()));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(range) = ranges.get(k) else { break };
                let chunk = enumerator.scan(range.clone());
                chunks.lock().expect("scan worker panicked").push(chunk);
            });
        }
    });
    enumerator.finish(chunks.into_inner().expect("scan worker panicked"))
}

/// Parallel version of `pcg_core::cycle_search`: the same trials with the
/// same per-trial seeds, returning the lowest-index trial that found a
/// cycle. Trials beyond an already-found index are skipped.
pub fn cycle_search_parallel(
    params: &GameParams,
    trials: u64,
    seed: u64,
    max_steps: u64,
    workers: usize,
) -> Result<Option<(u64, CycleWitness)>, Error> {
    let workers = worker_count(workers);
    let next = AtomicU64::new(0);
    let found = AtomicU64::new(u64::MAX);
    let outcome: Mutex<FirstHit> = Mutex::new(Ok(None));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::Relaxed);
                if t >= trials || t > found.load(Ordering::Relaxed) {
                    break;
                }
                let hit: FirstHit = match cycle_search_trial(params, trial_seed(seed, t), max_steps) {
                    Ok(None) => continue,
                    Ok(Some(w)) => Ok(Some((t, w))),
                    Err(e) => Err((t, e)),
                };
                found.fetch_min(t, Ordering::Relaxed);
                let mut slot = outcome.lock().expect("search worker panicked");
                let earlier = match &*slot {
                    Ok(None) => true,
                    Ok(Some((prev, _))) | Err((prev, _)) => t < *prev,
                };
                if earlier {
                    *slot = hit;
                }
            });
        }
    });
    outcome
        .into_inner()
        .expect("search worker panicked")
        .map_err(|(_, e)| e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcg_core::{cycle_search, enumerate_equilibria, Penalty, Rational};

    #[test]
    fn parallel_scan_matches_sequential() {
        let p = GameParams::new(4, Rational::new(3, 2), Penalty::Finite(Rational::new(5, 2))).unwrap();
        for kind in [EquilibriumKind::Nash, EquilibriumKind::Strong] {
            let opts = EnumerationOptions { dedupe_iso: true, ..Default::default() };
            let seq = enumerate_equilibria(&p, kind, opts).unwrap();
            for w in [1, 3, 8] {
                assert_eq!(enumerate_parallel(p, kind, opts, w).unwrap(), seq);
            }
        }
    }

    #[test]
    fn parallel_cycle_search_matches_sequential() {
        let p = GameParams::new(5, Rational::from_integer(3), Penalty::Infinite).unwrap();
        let seq = cycle_search(&p, 40, 7, 500).unwrap();
        assert_eq!(cycle_search_parallel(&p, 40, 7, 500, 4).unwrap(), seq);
    }

    #[test]
    fn guard_is_reported() {
        let p = GameParams::new(6, Rational::from_integer(3), Penalty::Infinite).unwrap();
        let err = enumerate_parallel(p, EquilibriumKind::Nash, EnumerationOptions::default(), 2).unwrap_err();
        assert!(err.is_guard());
    }
}
