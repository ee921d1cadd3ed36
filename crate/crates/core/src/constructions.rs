use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::game::{Strategy, StrategyVector};
use crate::graph::{bfs_from, InducedGraph};

/// Named states with fixed ownership conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalKind {
    Empty,
    /// Complete graph, each edge bought by its smaller endpoint.
    Complete,
    /// Star whose center buys every edge.
    CenterStar(usize),
    /// Star whose leaves each buy their edge to the center.
    PeripheryStar(usize),
    /// Player `i` buys `(i, i+1 mod len)` on players `0..len`; the rest are isolated.
    Cycle(usize),
    /// A `k`-clique on players `0..k`, each clique player the center of `l`
    /// leaves; the clique buys every edge. The rest are isolated.
    CliqueOfStars { k: usize, l: usize },
}

pub fn canonical_state(kind: CanonicalKind, n: usize) -> Result<StrategyVector, Error> {
    if !(2..=crate::MAX_PLAYERS).contains(&n) {
        return Err(Error::Construction(format!(
            "n must lie in 2..={}, got {n}",
            crate::MAX_PLAYERS
        )));
    }
    let mut s = alloc::vec![Strategy::EMPTY; n];
    match kind {
        CanonicalKind::Empty => {}
        CanonicalKind::Complete => {
            for (i, si) in s.iter_mut().enumerate() {
                *si = (i + 1..n).collect();
            }
        }
        CanonicalKind::CenterStar(c) | CanonicalKind::PeripheryStar(c) if c >= n => {
            return Err(Error::Construction(format!(
                "star center {c} is not a player of 0..{n}"
            )));
        }
        CanonicalKind::CenterStar(c) => {
            s[c] = (0..n).filter(|&j| j != c).collect();
        }
        CanonicalKind::PeripheryStar(c) => {
            for (i, si) in s.iter_mut().enumerate() {
                if i != c {
                    *si = Strategy::from_iter([c]);
                }
            }
        }
        CanonicalKind::Cycle(len) => {
            if len < 3 {
                return Err(Error::Construction(format!("cycle length must be >= 3, got {len}")));
            }
            if len > n {
                return Err(Error::Construction(format!(
                    "cycle length {len} exceeds player count {n}"
                )));
            }
            for (i, si) in s.iter_mut().enumerate().take(len) {
                *si = Strategy::from_iter([(i + 1) % len]);
            }
        }
        CanonicalKind::CliqueOfStars { k, l } => {
            if k < 3 || l < 1 {
                return Err(Error::Construction(format!(
                    "clique of stars needs k >= 3 and l >= 1, got k = {k}, l = {l}"
                )));
            }
            if k * (l + 1) > n {
                return Err(Error::Construction(format!(
                    "clique of stars needs k(l+1) = {} <= n = {n}",
                    k * (l + 1)
                )));
            }
            for (c, sc) in s.iter_mut().enumerate().take(k) {
                let clique = c + 1..k;
                let leaves = k + c * l..k + (c + 1) * l;
                *sc = clique.chain(leaves).collect();
            }
        }
    }
    Ok(StrategyVector::from_raw(s))
}

impl fmt::Display for CanonicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalKind::Empty => f.write_str("empty"),
            CanonicalKind::Complete => f.write_str("complete"),
            CanonicalKind::CenterStar(0) => f.write_str("center-star"),
            CanonicalKind::CenterStar(c) => write!(f, "center-star:{c}"),
            CanonicalKind::PeripheryStar(0) => f.write_str("periphery-star"),
            CanonicalKind::PeripheryStar(c) => write!(f, "periphery-star:{c}"),
            CanonicalKind::Cycle(len) => write!(f, "cycle:{len}"),
            CanonicalKind::CliqueOfStars { k, l } => write!(f, "clique-of-stars:{k}:{l}"),
        }
    }
}

impl FromStr for CanonicalKind {
    type Err = Error;

    /// Accepts `empty`, `complete`, `center-star[:C]`, `periphery-star[:C]`,
    /// `cycle:LEN` and `clique-of-stars:K:L`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let nums: Result<Vec<usize>, _> = parts.map(str::parse::<usize>).collect();
        let nums = nums.map_err(|_| Error::Construction(format!("bad number in kind `{s}`")))?;
        let kind = match (name, nums.as_slice()) {
            ("empty", []) => CanonicalKind::Empty,
            ("complete", []) => CanonicalKind::Complete,
            ("center-star", []) => CanonicalKind::CenterStar(0),
            ("center-star", [c]) => CanonicalKind::CenterStar(*c),
            ("periphery-star", []) => CanonicalKind::PeripheryStar(0),
            ("periphery-star", [c]) => CanonicalKind::PeripheryStar(*c),
            ("cycle", [len]) => CanonicalKind::Cycle(*len),
            ("clique-of-stars", [k, l]) => CanonicalKind::CliqueOfStars { k: *k, l: *l },
            _ => return Err(Error::Construction(format!("unknown construction `{s}`"))),
        };
        Ok(kind)
    }
}

/// Structural class of a connected component. Ownership is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructureLabel {
    Singleton,
    Pair,
    /// At least three vertices, one adjacent to all others, no other edges.
    Star,
    Clique(usize),
    Cycle(usize),
    CliqueOfStars { k: usize, l: usize },
    Tree,
    Other,
}

impl StructureLabel {
    /// Pairs, stars and trees are all trees.
    pub fn is_tree(&self) -> bool {
        matches!(self, StructureLabel::Pair | StructureLabel::Star | StructureLabel::Tree)
    }

    pub fn name(&self) -> String {
        match self {
            StructureLabel::Singleton => "singleton".into(),
            StructureLabel::Pair => "pair".into(),
            StructureLabel::Star => "star".into(),
            StructureLabel::Clique(k) => format!("clique:{k}"),
            StructureLabel::Cycle(len) => format!("cycle:{len}"),
            StructureLabel::CliqueOfStars { k, l } => format!("clique-of-stars:{k}:{l}"),
            StructureLabel::Tree => "tree".into(),
            StructureLabel::Other => "other".into(),
        }
    }
}

impl fmt::Display for StructureLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Labels the subgraph induced on `vertices`.
///
/// Precedence when several shapes fit: singleton, pair, star, clique,
/// cycle, clique of stars, tree, other. So a triangle is a clique and a
/// three-vertex path is a star.
pub fn structure_classify(g: &InducedGraph, vertices: &[usize]) -> Result<StructureLabel, Error> {
    let mask = vertices.iter().fold(0u64, |m, &v| m | 1 << v);
    let size = mask.count_ones() as usize;
    if size == 0 {
        return Err(Error::Disconnected);
    }
    let adj: Vec<u64> = (0..g.n())
        .map(|v| if mask >> v & 1 == 1 { g.neighbors(v) & mask } else { 0 })
        .collect();
    let first = mask.trailing_zeros() as usize;
    let (_, reached) = bfs_from(&adj, first);
    if reached != mask {
        return Err(Error::Disconnected);
    }
    let deg = |v: usize| adj[v].count_ones() as usize;
    let verts: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
    let m: usize = verts.iter().map(|&v| deg(v)).sum::<usize>() / 2;

    if size == 1 {
        return Ok(StructureLabel::Singleton);
    }
    if size == 2 {
        return Ok(StructureLabel::Pair);
    }
    if m == size - 1 && verts.iter().any(|&v| deg(v) == size - 1) {
        return Ok(StructureLabel::Star);
    }
    if m == size * (size - 1) / 2 {
        return Ok(StructureLabel::Clique(size));
    }
    if m == size && verts.iter().all(|&v| deg(v) == 2) {
        return Ok(StructureLabel::Cycle(size));
    }
    if let Some((k, l)) = clique_of_stars_shape(&adj, &verts) {
        return Ok(StructureLabel::CliqueOfStars { k, l });
    }
    if m == size - 1 {
        return Ok(StructureLabel::Tree);
    }
    Ok(StructureLabel::Other)
}

fn clique_of_stars_shape(adj: &[u64], verts: &[usize]) -> Option<(usize, usize)> {
    let core: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&v| adj[v].count_ones() > 1)
        .collect();
    let core_mask = core.iter().fold(0u64, |m, &v| m | 1 << v);
    let k = core.len();
    if k < 3 || !(verts.len() - k).is_multiple_of(k) {
        return None;
    }
    let l = (verts.len() - k) / k;
    if l == 0 {
        return None;
    }
    let is_shape = core.iter().all(|&c| {
        let in_core = adj[c] & core_mask;
        let leaves = adj[c] & !core_mask;
        in_core == core_mask & !(1 << c) && leaves.count_ones() as usize == l
    });
    is_shape.then_some((k, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{components, induce_graph};

    fn label_of_first_component(state: &StrategyVector) -> StructureLabel {
        let g = induce_graph(state);
        let cd = components(&g);
        structure_classify(&g, &cd.components[0].vertices).unwrap()
    }

    #[test]
    fn canonical_states_have_stated_ownership() {
        assert_eq!(canonical_state(CanonicalKind::Empty, 5).unwrap(), StrategyVector::empty(5));

        let c5 = canonical_state(CanonicalKind::Cycle(5), 7).unwrap();
        for i in 0..5 {
            assert_eq!(c5.strategy(i), Strategy::from_iter([(i + 1) % 5]));
        }
        assert!(c5.strategy(5).is_empty() && c5.strategy(6).is_empty());

        let cos = canonical_state(CanonicalKind::CliqueOfStars { k: 3, l: 1 }, 6).unwrap();
        let g = induce_graph(&cos);
        assert_eq!(g.edge_count(), 6);
        for e in g.edges() {
            let low_buys = e.buyers.low && !e.buyers.high;
            assert!(low_buys && e.low < 3, "edge {e:?} not bought by a clique player");
        }

        let p = canonical_state(CanonicalKind::PeripheryStar(0), 5).unwrap();
        assert!(p.strategy(0).is_empty());
        assert!((1..5).all(|i| p.strategy(i) == Strategy::from_iter([0])));
    }

    #[test]
    fn incompatible_kinds_are_rejected() {
        assert!(canonical_state(CanonicalKind::Cycle(2), 5).is_err());
        assert!(canonical_state(CanonicalKind::Cycle(6), 5).is_err());
        assert!(canonical_state(CanonicalKind::CliqueOfStars { k: 3, l: 1 }, 5).is_err());
        assert!(canonical_state(CanonicalKind::CliqueOfStars { k: 2, l: 1 }, 6).is_err());
        assert!(canonical_state(CanonicalKind::CenterStar(5), 5).is_err());
    }

    #[test]
    fn labels_of_small_shapes() {
        let pair = StrategyVector::from_targets(&[&[1], &[]]).unwrap();
        assert_eq!(label_of_first_component(&pair), StructureLabel::Pair);
        let c5 = canonical_state(CanonicalKind::Cycle(5), 5).unwrap();
        assert_eq!(label_of_first_component(&c5), StructureLabel::Cycle(5));
        let cos = canonical_state(CanonicalKind::CliqueOfStars { k: 3, l: 1 }, 6).unwrap();
        assert_eq!(label_of_first_component(&cos), StructureLabel::CliqueOfStars { k: 3, l: 1 });
        let k3 = canonical_state(CanonicalKind::Complete, 3).unwrap();
        assert_eq!(label_of_first_component(&k3), StructureLabel::Clique(3));
        let path3 = StrategyVector::from_targets(&[&[1], &[2], &[]]).unwrap();
        assert_eq!(label_of_first_component(&path3), StructureLabel::Star);
        let path4 = StrategyVector::from_targets(&[&[1], &[2], &[3], &[]]).unwrap();
        assert_eq!(label_of_first_component(&path4), StructureLabel::Tree);
        let diamond = StrategyVector::from_targets(&[&[1, 2], &[2, 3], &[3], &[]]).unwrap();
        assert_eq!(label_of_first_component(&diamond), StructureLabel::Other);
    }

    #[test]
    fn disconnected_input_is_an_error() {
        let g = induce_graph(&StrategyVector::empty(3));
        assert_eq!(structure_classify(&g, &[0, 1]), Err(Error::Disconnected));
    }

    #[test]
    fn kind_names_round_trip() {
        for s in ["empty", "complete", "center-star", "periphery-star:2", "cycle:5", "clique-of-stars:3:1"] {
            assert_eq!(s.parse::<CanonicalKind>().unwrap().to_string(), s);
        }
        assert!("cycle".parse::<CanonicalKind>().is_err());
        assert!("hexagon:6".parse::<CanonicalKind>().is_err());
    }
}
