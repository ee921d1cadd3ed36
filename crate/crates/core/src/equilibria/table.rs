//! Lookup tables for the exhaustive scan over small boards.
//!
//! Every state on `n <= 6` players induces a graph that fits an edge mask of
//! at most 15 bits. A player's best response depends only on the edges the
//! other players bought, so it is tabulated once per edge mask and player;
//! a Nash check then costs one lookup per player.

use alloc::vec;
use alloc::vec::Vec;

use crate::cost::Scaled;
use crate::game::Strategy;
use crate::graph::{adjacency_of_mask, bfs_from, pair_index, pairs};

/// Expands an `(n-1)`-bit code to a strategy that skips player `i`.
#[inline]
pub(crate) fn expand(i: usize, code: u64) -> u64 {
    (code & ((1 << i) - 1)) | ((code >> i) << (i + 1))
}

pub(crate) struct NashTable {
    pub n: usize,
    pub scaled: Scaled,
    /// Edge mask bought by player `i` with strategy code `c`, at `i << (n-1) | c`.
    pub edges_of: Vec<u32>,
    /// Distance-plus-penalty cost of vertex `v` in graph `mask`, at `mask * n + v`.
    pub connection: Vec<i128>,
    /// Best-response cost of player `i` against others' edge mask, at `i << E | mask`.
    pub best: Vec<i128>,
}

impl NashTable {
    pub fn new(n: usize, scaled: Scaled) -> Self {
        assert!((2..=6).contains(&n), "tables cover 2..=6 players");
        let pair_list = pairs(n);
        let e = pair_list.len();
        let per = 1usize << (n - 1);

        let mut edges_of = vec![0u32; n * per];
        for i in 0..n {
            for code in 0..per {
                let s = expand(i, code as u64);
                let mut mask = 0u32;
                for j in Strategy::from_bits(s).iter() {
                    let (a, b) = if i < j { (i, j) } else { (j, i) };
                    mask |= 1 << pair_index(n, a, b);
                }
                edges_of[i * per + code] = mask;
            }
        }

        let graphs = 1usize << e;
        let mut connection = vec![0i128; graphs * n];
        for mask in 0..graphs {
            let adj = adjacency_of_mask(&pair_list, n, mask as u64);
            for v in 0..n {
                let (dist, reached) = bfs_from(&adj, v);
                connection[mask * n + v] = scaled.connection(dist, n as u32 - reached.count_ones());
            }
        }

        let mut best = vec![Scaled::INF; n * graphs];
        for i in 0..n {
            for others in 0..graphs {
                let mut min = Scaled::INF;
                for code in 0..per {
                    let conn = connection[(others | edges_of[i * per + code] as usize) * n + i];
                    if conn == Scaled::INF {
                        continue;
                    }
                    let c = conn + scaled.alpha * (code as u32).count_ones() as i128;
                    min = min.min(c);
                }
                best[i * graphs + others] = min;
            }
        }

        NashTable {
            n,
            scaled,
            edges_of,
            connection,
            best,
        }
    }

    /// Social cost (scaled) if the state with these strategy codes is a Nash
    /// equilibrium, `None` otherwise.
    #[inline]
    pub fn nash_cost(&self, codes: &[u64]) -> Option<i128> {
        let n = self.n;
        let per_bits = n - 1;
        let e = n * (n - 1) / 2;
        let mut masks = [0u32; 6];
        let mut full = 0u32;
        for i in 0..n {
            masks[i] = self.edges_of[(i << per_bits) | codes[i] as usize];
            full |= masks[i];
        }
        let mut social = 0i128;
        for i in 0..n {
            let mut others = 0u32;
            for (j, m) in masks.iter().enumerate().take(n) {
                if j != i {
                    others |= m;
                }
            }
            let conn = self.connection[full as usize * n + i];
            if conn == Scaled::INF {
                // Only reachable in the classic game; the best response is
                // then finite iff connecting is possible at all.
                if self.best[(i << e) | others as usize] != Scaled::INF {
                    return None;
                }
                social = Scaled::INF;
                continue;
            }
            let cost = conn + self.scaled.alpha * codes[i].count_ones() as i128;
            if cost > self.best[(i << e) | others as usize] {
                return None;
            }
            if social != Scaled::INF {
                social += cost;
            }
        }
        Some(social)
    }
}
