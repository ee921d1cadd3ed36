use alloc::vec;
use alloc::vec::Vec;

use crate::game::StrategyVector;

/// Which endpoints paid for an edge `{low, high}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Buyers {
    pub low: bool,
    pub high: bool,
}

impl Buyers {
    pub fn count(&self) -> usize {
        self.low as usize + self.high as usize
    }
}

/// Undirected edge with `low < high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub low: usize,
    pub high: usize,
    pub buyers: Buyers,
}

/// The undirected graph a state induces, with ownership kept per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<u64>,
    purchases: Vec<usize>,
}

impl InducedGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges sorted by `(low, high)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbor bit set of `v`.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn buyers(&self, u: usize, v: usize) -> Option<Buyers> {
        let (low, high) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.low, e.high).cmp(&(low, high)))
            .ok()
            .map(|k| self.edges[k].buyers)
    }

    /// `|s_i|`, counting doubly bought edges.
    pub fn purchases_of(&self, i: usize) -> usize {
        self.purchases[i]
    }

    pub fn total_purchases(&self) -> usize {
        self.purchases.iter().sum()
    }
}

pub fn induce_graph(state: &StrategyVector) -> InducedGraph {
    let n = state.n();
    let adj = adjacency(state);
    let mut edges = Vec::new();
    for low in 0..n {
        let mut higher = adj[low] >> low >> 1;
        while higher != 0 {
            let high = low + 1 + higher.trailing_zeros() as usize;
            higher &= higher - 1;
            edges.push(Edge {
                low,
                high,
                buyers: Buyers {
                    low: state.strategy(low).contains(high),
                    high: state.strategy(high).contains(low),
                },
            });
        }
    }
    InducedGraph {
        n,
        edges,
        adj,
        purchases: state.strategies().iter().map(|s| s.len()).collect(),
    }
}

pub(crate) fn adjacency(state: &StrategyVector) -> Vec<u64> {
    let n = state.n();
    let mut adj = vec![0u64; n];
    for i in 0..n {
        let s = state.strategy(i).bits();
        adj[i] |= s;
        let mut t = s;
        while t != 0 {
            let j = t.trailing_zeros() as usize;
            t &= t - 1;
            adj[j] |= 1 << i;
        }
    }
    adj
}

/// Breadth-first layers from `src`: returns the distance sum to reached
/// vertices and the reached set (including `src`).
#[inline]
pub(crate) fn bfs_from(adj: &[u64], src: usize) -> (u32, u64) {
    let mut seen = 1u64 << src;
    let mut frontier = seen;
    let mut depth = 0u32;
    let mut sum = 0u32;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            next |= adj[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        next &= !seen;
        depth += 1;
        sum += depth * next.count_ones();
        seen |= next;
        frontier = next;
    }
    (sum, seen)
}

fn bfs_row(adj: &[u64], src: usize, row: &mut [Option<u32>]) {
    let mut seen = 1u64 << src;
    let mut frontier = seen;
    let mut depth = 0u32;
    row[src] = Some(0);
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            next |= adj[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        next &= !seen;
        depth += 1;
        let mut t = next;
        while t != 0 {
            row[t.trailing_zeros() as usize] = Some(depth);
            t &= t - 1;
        }
        seen |= next;
        frontier = next;
    }
}

/// Hop distances; `None` marks a pair in different components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Option<u32>>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Option<u32>] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Sum of finite distances from `i`.
    pub fn row_sum(&self, i: usize) -> u64 {
        self.row(i).iter().flatten().map(|&d| d as u64).sum()
    }

    pub fn unreachable_from(&self, i: usize) -> usize {
        self.row(i).iter().filter(|d| d.is_none()).count()
    }
}

pub fn all_pairs_distances(g: &InducedGraph) -> DistanceMatrix {
    let n = g.n;
    let mut entries = vec![None; n * n];
    for (src, row) in entries.chunks_mut(n.max(1)).enumerate().take(n) {
        bfs_row(&g.adj, src, row);
    }
    DistanceMatrix { n, entries }
}

/// A connected component with its size, internal edge count and diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: usize,
    pub diameter: u32,
}

impl Component {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// Components ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn component_of(&self, v: usize) -> &Component {
        self.components
            .iter()
            .find(|c| c.vertices.contains(&v))
            .expect("every vertex lies in a component")
    }

    pub fn non_singleton(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.size() > 1)
    }

    /// Smallest size over non-singleton components.
    pub fn min_nontrivial_size(&self) -> Option<usize> {
        self.non_singleton().map(Component::size).min()
    }

    /// Smallest diameter over non-singleton components.
    pub fn min_nontrivial_diameter(&self) -> Option<u32> {
        self.non_singleton().map(|c| c.diameter).min()
    }
}

pub fn components(g: &InducedGraph) -> ComponentDecomposition {
    let n = g.n;
    let mut assigned = 0u64;
    let mut out = Vec::new();
    for v in 0..n {
        if assigned >> v & 1 == 1 {
            continue;
        }
        let (_, reached) = bfs_from(&g.adj, v);
        assigned |= reached;
        let vertices: Vec<usize> = (0..n).filter(|&u| reached >> u & 1 == 1).collect();
        let degree_sum: usize = vertices.iter().map(|&u| g.degree(u)).sum();
        let mut diameter = 0;
        let mut row = vec![None; n];
        for &u in &vertices {
            bfs_row(&g.adj, u, &mut row);
            diameter = diameter.max(row.iter().flatten().copied().max().unwrap_or(0));
            row.iter_mut().for_each(|d| *d = None);
        }
        out.push(Component {
            vertices,
            edges: degree_sum / 2,
            diameter,
        });
    }
    ComponentDecomposition { components: out }
}

/// Index of the unordered pair `{low, high}` among all pairs of `0..n`,
/// ordered `(0,1), (0,2), .., (1,2), ..`.
pub(crate) fn pair_index(n: usize, low: usize, high: usize) -> usize {
    debug_assert!(low < high && high < n);
    low * (2 * n - low - 1) / 2 + (high - low - 1)
}

/// All pairs of `0..n` in [`pair_index`] order.
pub(crate) fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for low in 0..n {
        for high in low + 1..n {
            v.push((low, high));
        }
    }
    v
}

/// Adjacency bit sets of the graph with the given edge-mask over [`pairs`].
pub(crate) fn adjacency_of_mask(pairs: &[(usize, usize)], n: usize, mask: u64) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    let mut m = mask;
    while m != 0 {
        let (a, b) = pairs[m.trailing_zeros() as usize];
        m &= m - 1;
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}
