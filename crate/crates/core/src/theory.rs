//! Closed-form classifiers over `(n, alpha, beta)`.
//!
//! Each classifier is a direct evaluation of an inequality region; the test
//! suites compare them against the brute-force searches in
//! [`crate::equilibria`].

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cost::{ratio_to_f64, Cost, Penalty, Rational};
use crate::constructions::StructureLabel;
use crate::error::Error;
use crate::game::{social_cost, GameParams, StrategyVector};
use crate::graph::{components, induce_graph, InducedGraph};

/// Base of the logarithm in the `12 n log n` and `sqrt(n log n)` guards.
pub const LOG_BASE: f64 = core::f64::consts::E;

fn log(x: f64) -> f64 {
    libm::log(x) / libm::log(LOG_BASE)
}

fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

/// `beta * n - 2(n - 1)`: the edge price above which the empty graph beats
/// the star.
fn star_empty_threshold(n: usize, beta: Rational) -> Rational {
    beta * int(n as i128) - int(2 * (n as i128 - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OptimumShape {
    Empty,
    Complete,
    Star,
}

impl OptimumShape {
    pub const ALL: [OptimumShape; 3] = [OptimumShape::Empty, OptimumShape::Complete, OptimumShape::Star];

    pub fn name(&self) -> &'static str {
        match self {
            OptimumShape::Empty => "empty",
            OptimumShape::Complete => "complete",
            OptimumShape::Star => "star",
        }
    }
}

impl fmt::Display for OptimumShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The named shapes whose cost is minimal. More than one member means an
/// exact tie on a region boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OptimumClass {
    pub members: BTreeSet<OptimumShape>,
}

impl OptimumClass {
    pub fn contains(&self, shape: OptimumShape) -> bool {
        self.members.contains(&shape)
    }

    pub fn iter(&self) -> impl Iterator<Item = OptimumShape> + '_ {
        self.members.iter().copied()
    }
}

impl fmt::Display for OptimumClass {
    /// Members joined by `+`, e.g. `empty+complete`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(|s| s.name()).collect();
        f.write_str(&names.join("+"))
    }
}

/// Social cost of the named shape on `n` players.
pub fn canonical_cost(shape: OptimumShape, n: usize, alpha: Rational, beta: Penalty) -> Cost {
    let n = n as i128;
    match shape {
        OptimumShape::Empty => match beta {
            Penalty::Finite(b) => Cost::Finite(b * int(n * (n - 1))),
            Penalty::Infinite => Cost::Infinite,
        },
        OptimumShape::Complete => Cost::Finite(int(n * (n - 1)) / int(2) * (alpha + int(2))),
        OptimumShape::Star => Cost::Finite(int(n - 1) * (alpha + int(2 * (n - 1)))),
    }
}

/// Which of empty, complete and star graphs are socially optimal.
///
/// Complete iff `alpha <= min{2, 2beta - 2}`; star iff
/// `2 <= alpha <= beta n - 2(n-1)`; empty iff `alpha >= 2beta - 2` and
/// `alpha >= beta n - 2(n-1)`. Boundaries belong to both sides. On two
/// players the star and the complete graph coincide and are reported
/// together.
pub fn social_optimum_class(params: &GameParams) -> OptimumClass {
    let (n, alpha) = (params.n, params.alpha);
    let two = int(2);
    let mut members = BTreeSet::new();
    match params.beta {
        Penalty::Infinite => {
            if n == 2 {
                members.extend([OptimumShape::Complete, OptimumShape::Star]);
            } else {
                if alpha <= two {
                    members.insert(OptimumShape::Complete);
                }
                if alpha >= two {
                    members.insert(OptimumShape::Star);
                }
            }
        }
        Penalty::Finite(beta) => {
            let pair_tie = two * beta - two;
            if n == 2 {
                if alpha <= pair_tie {
                    members.extend([OptimumShape::Complete, OptimumShape::Star]);
                }
                if alpha >= pair_tie {
                    members.insert(OptimumShape::Empty);
                }
            } else {
                let threshold = star_empty_threshold(n, beta);
                if alpha <= two && alpha <= pair_tie {
                    members.insert(OptimumShape::Complete);
                }
                if alpha >= two && alpha <= threshold {
                    members.insert(OptimumShape::Star);
                }
                if alpha >= pair_tie && alpha >= threshold {
                    members.insert(OptimumShape::Empty);
                }
            }
        }
    }
    OptimumClass { members }
}

/// Whether a disconnected Nash equilibrium exists: iff `alpha >= beta - 1`.
/// Never in the classic game.
pub fn disconnected_ne_region(alpha: Rational, beta: Penalty) -> bool {
    match beta {
        Penalty::Finite(b) => alpha >= b - int(1),
        Penalty::Infinite => false,
    }
}

/// A side of an inequality. Logarithmic bounds are irrational and carried
/// as floating-point values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Exact(Rational),
    Real(f64),
    Infinite,
}

impl BoundValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => ratio_to_f64(r),
            BoundValue::Real(x) => *x,
            BoundValue::Infinite => f64::INFINITY,
        }
    }

    fn from_penalty(beta: Penalty) -> Self {
        match beta {
            Penalty::Finite(b) => BoundValue::Exact(b),
            Penalty::Infinite => BoundValue::Infinite,
        }
    }

    fn cmp(&self, other: &BoundValue) -> Option<core::cmp::Ordering> {
        match (self, other) {
            (BoundValue::Exact(a), BoundValue::Exact(b)) => Some(a.cmp(b)),
            (BoundValue::Infinite, BoundValue::Infinite) => None,
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(r) => write!(f, "{r}"),
            BoundValue::Real(x) => write!(f, "{x:.6}"),
            BoundValue::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    fn holds(&self, left: &BoundValue, right: &BoundValue) -> bool {
        use core::cmp::Ordering::*;
        match (self, left.cmp(right)) {
            (_, None) => false,
            (Relation::Lt, Some(o)) => o == Less,
            (Relation::Le, Some(o)) => o != Greater,
            (Relation::Eq, Some(o)) => o == Equal,
            (Relation::Ge, Some(o)) => o != Less,
            (Relation::Gt, Some(o)) => o == Greater,
        }
    }
}

/// One evaluated inequality `left relation right`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub inequality: String,
    pub left: BoundValue,
    pub relation: Relation,
    pub right: BoundValue,
    pub satisfied: bool,
    /// The check's premise does not apply, so it holds trivially.
    pub vacuous: bool,
}

impl BoundCheck {
    fn new(
        name: &'static str,
        inequality: impl Into<String>,
        left: BoundValue,
        relation: Relation,
        right: BoundValue,
    ) -> Self {
        BoundCheck {
            name,
            inequality: inequality.into(),
            satisfied: relation.holds(&left, &right),
            left,
            relation,
            right,
            vacuous: false,
        }
    }

    fn vacuous(name: &'static str, inequality: impl Into<String>) -> Self {
        BoundCheck {
            name,
            inequality: inequality.into(),
            left: BoundValue::Exact(int(0)),
            relation: Relation::Eq,
            right: BoundValue::Exact(int(0)),
            satisfied: true,
            vacuous: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEvaluation {
    pub checks: Vec<BoundCheck>,
}

impl BoundEvaluation {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }

    pub fn get(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn violated(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.satisfied)
    }
}

fn exact(r: Rational) -> BoundValue {
    BoundValue::Exact(r)
}

/// Necessary conditions for a connected structure to appear as a component
/// of a disconnected Nash equilibrium.
///
/// Every label gets the disconnection condition `alpha >= beta - 1`, plus:
/// pairs need `alpha <= 1` and `alpha <= beta - 1`; cliques need
/// `alpha <= 1` and `beta <= 2`; trees (stars included) need `alpha <= 1`
/// and `beta <= 2`; a `(k,l)`-clique of stars needs `alpha = l = 1` and
/// `beta = 2`; a 5-cycle needs `3 <= alpha <= 4` and
/// `beta <= (alpha + 11)/5`.
pub fn component_conditions(
    label: StructureLabel,
    alpha: Rational,
    beta: Penalty,
) -> Result<BoundEvaluation, Error> {
    let a = exact(alpha);
    let b = BoundValue::from_penalty(beta);
    let one = exact(int(1));
    let two = exact(int(2));
    let beta_minus_one = match beta {
        Penalty::Finite(x) => exact(x - int(1)),
        Penalty::Infinite => BoundValue::Infinite,
    };
    let mut checks = alloc::vec![BoundCheck::new(
        "disconnected",
        "alpha >= beta - 1",
        a,
        Relation::Ge,
        beta_minus_one,
    )];
    match label {
        StructureLabel::Pair => {
            checks.push(BoundCheck::new("pair-edge-price", "alpha <= 1", a, Relation::Le, one));
            checks.push(BoundCheck::new(
                "pair-keep-edge",
                "alpha <= beta - 1",
                a,
                Relation::Le,
                beta_minus_one,
            ));
        }
        StructureLabel::Clique(_) => {
            checks.push(BoundCheck::new("clique-edge-price", "alpha <= 1", a, Relation::Le, one));
            checks.push(BoundCheck::new("clique-penalty", "beta <= 2", b, Relation::Le, two));
        }
        StructureLabel::Tree | StructureLabel::Star => {
            checks.push(BoundCheck::new("tree-edge-price", "alpha <= 1", a, Relation::Le, one));
            checks.push(BoundCheck::new("tree-penalty", "beta <= 2", b, Relation::Le, two));
        }
        StructureLabel::CliqueOfStars { l, .. } => {
            checks.push(BoundCheck::new(
                "clique-of-stars-leaves",
                format!("alpha = l = {l}"),
                a,
                Relation::Eq,
                exact(int(l as i128)),
            ));
            checks.push(BoundCheck::new("clique-of-stars-edge-price", "alpha = 1", a, Relation::Eq, one));
            checks.push(BoundCheck::new("clique-of-stars-penalty", "beta = 2", b, Relation::Eq, two));
        }
        StructureLabel::Cycle(5) => {
            checks.push(BoundCheck::new("c5-lower", "alpha >= 3", a, Relation::Ge, exact(int(3))));
            checks.push(BoundCheck::new("c5-upper", "alpha <= 4", a, Relation::Le, exact(int(4))));
            checks.push(BoundCheck::new(
                "c5-penalty",
                "beta <= (alpha + 11)/5",
                b,
                Relation::Le,
                exact((alpha + int(11)) / int(5)),
            ));
        }
        other => {
            return Err(Error::Unsupported(format!("component label {other}")));
        }
    }
    Ok(BoundEvaluation { checks })
}

/// The four necessary bounds for a non-empty disconnected equilibrium whose
/// smallest non-singleton component has `n_l` players and whose smallest
/// non-singleton diameter is `diam_l`.
pub fn nonempty_ne_bounds(
    n: usize,
    n_l: usize,
    diam_l: u32,
    alpha: Rational,
    beta: Penalty,
) -> Result<BoundEvaluation, Error> {
    if n_l < 2 {
        return Err(Error::InvalidParams(format!(
            "smallest non-singleton component needs at least 2 players, got {n_l}"
        )));
    }
    let nl = n_l as f64;
    let nlogn = nl * log(nl);
    let b = BoundValue::from_penalty(beta);
    let mut checks = alloc::vec![
        BoundCheck::new(
            "edge-price",
            "alpha < 12 n_l log n_l",
            exact(alpha),
            Relation::Lt,
            BoundValue::Real(12.0 * nlogn),
        ),
        BoundCheck::new(
            "diameter",
            "beta <= 1 + 2 diam_l",
            b,
            Relation::Le,
            exact(int(1 + 2 * diam_l as i128)),
        ),
        BoundCheck::new(
            "component-size",
            "beta < 1 + 14 sqrt(n_l log n_l)",
            b,
            Relation::Lt,
            BoundValue::Real(1.0 + 14.0 * libm::sqrt(nlogn)),
        ),
    ];
    if n > 6 {
        checks.push(BoundCheck::new(
            "player-count",
            "n > 6 implies beta < n/2",
            b,
            Relation::Lt,
            exact(Rational::new(n as i128, 2)),
        ));
    } else {
        checks.push(BoundCheck::vacuous("player-count", "n > 6 implies beta < n/2"));
    }
    Ok(BoundEvaluation { checks })
}

/// Lower bounds on the cost a connected component induces among its own
/// members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostLowerBound {
    /// `2 n_C (n_C - 1) + (alpha - 2) m_C`.
    pub bound: Rational,
    /// `n_C (n_C - 1) beta`, the cost the same players pay when isolated.
    pub chained: Option<Rational>,
    /// Whether `bound >= chained` is guaranteed: `m_C >= n_C - 1`,
    /// `alpha >= 2` and `alpha >= beta n_C - 2(n_C - 1)`.
    pub chain_valid: bool,
}

pub fn component_cost_lower_bound(
    n_c: usize,
    m_c: usize,
    alpha: Rational,
    beta: Penalty,
) -> CostLowerBound {
    let nc = n_c as i128;
    let bound = int(2 * nc * (nc - 1)) + (alpha - int(2)) * int(m_c as i128);
    let chained = beta.finite().map(|b| int(nc * (nc - 1)) * b);
    let chain_valid = match beta.finite() {
        Some(b) if n_c >= 1 => {
            m_c + 1 >= n_c && alpha >= int(2) && alpha >= star_empty_threshold(n_c, b)
        }
        _ => false,
    };
    CostLowerBound {
        bound,
        chained,
        chain_valid,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PoaRegion {
    /// `alpha < beta - 1` or the classic game: equilibria coincide with the
    /// classic game's.
    ClassicEquivalent,
    /// The complete graph is optimal.
    CompleteOptimum,
    /// The star is optimal and the empty graph is an equilibrium.
    StarOptimum,
    /// The empty graph is optimal.
    EmptyOptimum,
}

impl PoaRegion {
    pub fn name(&self) -> &'static str {
        match self {
            PoaRegion::ClassicEquivalent => "classic-equivalent",
            PoaRegion::CompleteOptimum => "complete-optimum",
            PoaRegion::StarOptimum => "star-optimum",
            PoaRegion::EmptyOptimum => "empty-optimum",
        }
    }
}

/// Price-of-anarchy statement for one parameter point. Asymptotic regions
/// only carry a descriptor; numbers appear where a closed form exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoaBound {
    pub region: PoaRegion,
    pub descriptor: String,
    /// Concrete upper bound on the price of anarchy.
    pub upper: Option<Rational>,
    /// Exact price of anarchy when it is pinned down.
    pub exact: Option<Rational>,
    /// `c(empty)/c(star) = beta n/(alpha + 2(n-1))`, a lower bound whenever
    /// the empty graph is an equilibrium and the star is optimal.
    pub empty_ratio: Option<Rational>,
}

fn empty_star_ratio(n: usize, alpha: Rational, beta: Rational) -> Rational {
    beta * int(n as i128) / (alpha + int(2 * (n as i128 - 1)))
}

pub fn analytic_poa_bound(params: &GameParams) -> PoaBound {
    let (n, alpha) = (params.n, params.alpha);
    let one = int(1);
    let two = int(2);
    let big_alpha = ratio_to_f64(&alpha) >= 12.0 * n as f64 * log(n as f64);
    let classic = |descriptor: &str| {
        let (upper, exact) = if alpha < one {
            (None, Some(one))
        } else if alpha < two {
            (Some(Rational::new(4, 3)), None)
        } else {
            (None, None)
        };
        PoaBound {
            region: PoaRegion::ClassicEquivalent,
            descriptor: descriptor.into(),
            upper,
            exact,
            empty_ratio: None,
        }
    };
    let beta = match params.beta {
        Penalty::Infinite => return classic("classic game: reference bounds for connected equilibria"),
        Penalty::Finite(b) if alpha < b - one => {
            return classic("alpha < beta - 1: same equilibria as the classic game")
        }
        Penalty::Finite(b) => b,
    };
    let pair_tie = two * beta - two;
    let threshold = star_empty_threshold(n, beta);
    let bound = |region, descriptor: String, upper, exact, empty_ratio| PoaBound {
        region,
        descriptor,
        upper,
        exact,
        empty_ratio,
    };

    // Complete graph optimal.
    if alpha < one && alpha <= pair_tie {
        return bound(PoaRegion::CompleteOptimum, "<= 4/3 for alpha < 1".into(), Some(Rational::new(4, 3)), None, None);
    }
    if alpha <= two && alpha <= pair_tie && beta < two {
        return bound(
            PoaRegion::CompleteOptimum,
            "<= 4/3 for 1 <= alpha <= 2 and beta < 2".into(),
            Some(Rational::new(4, 3)),
            None,
            None,
        );
    }
    if alpha < two && alpha < pair_tie && beta >= two {
        return bound(
            PoaRegion::CompleteOptimum,
            "<= 3/2 for alpha < min{2, 2beta - 2} and beta >= 2".into(),
            Some(Rational::new(3, 2)),
            None,
            None,
        );
    }

    // Empty graph optimal.
    if pair_tie < alpha && alpha < one {
        return bound(PoaRegion::EmptyOptimum, "<= 3/2 for 2beta - 2 < alpha < 1".into(), Some(Rational::new(3, 2)), None, None);
    }
    if one <= alpha && alpha < two && alpha > pair_tie {
        return bound(
            PoaRegion::EmptyOptimum,
            "<= 2 for 1 <= alpha < 2 and alpha > 2beta - 2".into(),
            Some(two),
            None,
            None,
        );
    }
    if alpha > threshold && alpha >= two {
        if big_alpha {
            return bound(
                PoaRegion::EmptyOptimum,
                "= 1 for alpha >= 12 n log n and alpha > beta n - 2(n-1)".into(),
                None,
                Some(one),
                None,
            );
        }
        return bound(
            PoaRegion::EmptyOptimum,
            "O(5^sqrt(log n) log n (alpha + n)/(n beta)) for 2 <= alpha < 12 n log n".into(),
            None,
            None,
            None,
        );
    }

    // Star optimal, empty graph an equilibrium.
    let ratio = Some(empty_star_ratio(n, alpha, beta));
    if alpha >= pair_tie && alpha <= threshold {
        let descriptor = if big_alpha {
            "Theta(n beta/alpha) for alpha >= 12 n log n"
        } else {
            "O(5^sqrt(log n) log n + n beta/(alpha + n)) for alpha < 12 n log n"
        };
        return bound(PoaRegion::StarOptimum, descriptor.into(), None, None, ratio);
    }
    bound(
        PoaRegion::StarOptimum,
        "Theta(min{beta, n}) for beta - 1 <= alpha <= 2beta - 2".into(),
        None,
        None,
        ratio,
    )
}

/// A structure class ruled out as a component of any disconnected Nash
/// equilibrium at the given parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exclusion {
    pub label: &'static str,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionReport {
    pub params: GameParams,
    pub optimum_class: OptimumClass,
    pub disconnected_ne_possible: bool,
    pub exclusions: Vec<Exclusion>,
    pub poa_bound: PoaBound,
    /// Whether a social optimum may fail to be a strong equilibrium:
    /// `beta < 3`, or `beta n - 2n + 2 - (beta - 1) < alpha < beta n - 2n + 2`.
    /// `None` when `alpha < beta - 1`, where the classic game's answer applies.
    pub optimum_strong_exception: Option<bool>,
}

pub fn region_report(params: &GameParams) -> RegionReport {
    let (alpha, beta) = (params.alpha, params.beta);
    let possible = disconnected_ne_region(alpha, beta);
    let one = int(1);
    let two = int(2);
    let mut exclusions = Vec::new();
    let mut exclude = |label, reason| exclusions.push(Exclusion { label, reason });
    match beta.finite() {
        Some(b) if possible => {
            if alpha > one {
                exclude("pair", "edge price above 1");
            }
            if b > two {
                exclude("clique", "penalty above 2");
            }
            if alpha > one || b > two {
                exclude("tree", "edge price above 1 or penalty above 2");
            }
            if alpha != one || b != two {
                exclude("clique-of-stars", "needs edge price 1 and penalty 2");
            }
            if alpha < int(3) || alpha > int(4) || b > (alpha + int(11)) / int(5) {
                exclude("cycle:5", "needs 3 <= alpha <= 4 and beta <= (alpha + 11)/5");
            }
        }
        _ => exclude("any", "no disconnected equilibrium exists"),
    }
    let optimum_strong_exception = match beta.finite() {
        Some(b) if alpha >= b - one => {
            let top = star_empty_threshold(params.n, b);
            let window = top - (b - one) < alpha && alpha < top;
            Some(b < int(3) || window)
        }
        _ => None,
    };
    RegionReport {
        params: *params,
        optimum_class: social_optimum_class(params),
        disconnected_ne_possible: possible,
        exclusions,
        poa_bound: analytic_poa_bound(params),
        optimum_strong_exception,
    }
}

/// Component-wise price-of-anarchy bound for a disconnected state against
/// the star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPoa {
    /// `beta n/(alpha + 2(n-1))`.
    pub empty_term: Rational,
    /// Per non-singleton component: its vertices and
    /// `c(C)/c(star on |C| players)`, where `c(C)` counts only purchases
    /// and distances inside `C`.
    pub component_ratios: Vec<(Vec<usize>, Rational)>,
    pub bound: Rational,
    /// `c(s)/c(star)`.
    pub actual: Rational,
    pub holds: bool,
}

fn internal_cost(g: &InducedGraph, vertices: &[usize], alpha: Rational) -> Rational {
    let mask = vertices.iter().fold(0u64, |m, &v| m | 1 << v);
    let adj: Vec<u64> = (0..g.n())
        .map(|v| if mask >> v & 1 == 1 { g.neighbors(v) & mask } else { 0 })
        .collect();
    let purchases: usize = vertices.iter().map(|&v| g.purchases_of(v)).sum();
    let distance: u64 = vertices
        .iter()
        .map(|&v| crate::graph::bfs_from(&adj, v).0 as u64)
        .sum();
    alpha * int(purchases as i128) + int(distance as i128)
}

pub fn compo_poa_decomposition(
    state: &StrategyVector,
    params: &GameParams,
) -> Result<ComponentPoa, Error> {
    let beta = params.beta.finite().ok_or_else(|| {
        Error::InvalidParams("component decomposition needs a finite penalty".into())
    })?;
    let g = induce_graph(state);
    let cd = components(&g);
    if cd.is_connected() {
        return Err(Error::Connected);
    }
    let (n, alpha) = (params.n, params.alpha);
    let star = |k: usize| int(k as i128 - 1) * (alpha + int(2 * (k as i128 - 1)));
    let component_ratios: Vec<(Vec<usize>, Rational)> = cd
        .non_singleton()
        .map(|c| (c.vertices.clone(), internal_cost(&g, &c.vertices, alpha) / star(c.size())))
        .collect();
    let max_ratio = component_ratios
        .iter()
        .map(|(_, r)| *r)
        .max()
        .unwrap_or_else(|| int(0));
    let empty_term = empty_star_ratio(n, alpha, beta);
    let bound = empty_term + max_ratio;
    let actual = match social_cost(state, params) {
        Cost::Finite(c) => c / star(n),
        Cost::Infinite => unreachable!("finite penalty gives finite cost"),
    };
    Ok(ComponentPoa {
        empty_term,
        component_ratios,
        bound,
        actual,
        holds: actual <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{canonical_state, CanonicalKind};

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn fin(n: i128, d: i128) -> Penalty {
        Penalty::Finite(q(n, d))
    }

    fn class(n: usize, a: Rational, b: Penalty) -> Vec<OptimumShape> {
        social_optimum_class(&GameParams::new(n, a, b).unwrap()).iter().collect()
    }

    #[test]
    fn optimum_classes() {
        assert_eq!(class(10, q(1, 1), fin(2, 1)), [OptimumShape::Complete]);
        assert_eq!(class(10, q(5, 1), fin(3, 1)), [OptimumShape::Star]);
        // At alpha = beta = 2 every named shape costs 180 on ten players.
        assert_eq!(class(10, q(2, 1), fin(2, 1)), OptimumShape::ALL);
        assert_eq!(class(10, q(2, 1), fin(5, 2)), [OptimumShape::Complete, OptimumShape::Star]);
        assert_eq!(class(5, q(3, 1), fin(3, 2)), [OptimumShape::Empty]);
    }

    #[test]
    fn class_members_are_the_cheapest_named_shapes() {
        for n in 2..9 {
            for an in 1..30 {
                for bn in 11..40 {
                    let (a, b) = (q(an, 4), fin(bn, 5));
                    let costs: Vec<Cost> =
                        OptimumShape::ALL.iter().map(|&s| canonical_cost(s, n, a, b)).collect();
                    let min = *costs.iter().min().unwrap();
                    let argmin: Vec<OptimumShape> = OptimumShape::ALL
                        .iter()
                        .zip(&costs)
                        .filter(|(_, &c)| c == min)
                        .map(|(&s, _)| s)
                        .collect();
                    assert_eq!(class(n, a, b), argmin, "n={n} alpha={a} beta={b:?}");
                }
            }
        }
    }

    #[test]
    fn canonical_costs_match_direct_evaluation() {
        let p = GameParams::new(5, q(3, 1), fin(5, 2)).unwrap();
        for (shape, kind) in [
            (OptimumShape::Empty, CanonicalKind::Empty),
            (OptimumShape::Complete, CanonicalKind::Complete),
            (OptimumShape::Star, CanonicalKind::CenterStar(0)),
        ] {
            let s = canonical_state(kind, 5).unwrap();
            assert_eq!(canonical_cost(shape, 5, p.alpha, p.beta), social_cost(&s, &p));
        }
    }

    #[test]
    fn disconnection_threshold() {
        assert!(disconnected_ne_region(q(2, 1), fin(5, 2)));
        assert!(!disconnected_ne_region(q(1, 1), fin(3, 1)));
        assert!(disconnected_ne_region(q(3, 2), fin(5, 2)));
        assert!(!disconnected_ne_region(q(100, 1), Penalty::Infinite));
    }

    #[test]
    fn c5_conditions() {
        let ok = component_conditions(StructureLabel::Cycle(5), q(7, 2), fin(29, 10)).unwrap();
        assert!(ok.all_satisfied());
        let bad = component_conditions(StructureLabel::Cycle(5), q(7, 2), fin(3, 1)).unwrap();
        assert_eq!(bad.violated().map(|c| c.name).collect::<Vec<_>>(), ["c5-penalty"]);
    }

    #[test]
    fn clique_of_stars_needs_exact_point() {
        let label = StructureLabel::CliqueOfStars { k: 3, l: 1 };
        assert!(component_conditions(label, q(1, 1), fin(2, 1)).unwrap().all_satisfied());
        for (a, b) in [(q(1, 1), fin(3, 2)), (q(2, 1), fin(3, 1)), (q(1, 2), fin(2, 1))] {
            assert!(!component_conditions(label, a, b).unwrap().all_satisfied());
        }
    }

    #[test]
    fn unsupported_labels() {
        for label in [StructureLabel::Other, StructureLabel::Singleton, StructureLabel::Cycle(4)] {
            assert!(matches!(
                component_conditions(label, q(1, 1), fin(2, 1)),
                Err(Error::Unsupported(_))
            ));
        }
    }

    #[test]
    fn nonempty_bounds() {
        let e = nonempty_ne_bounds(7, 5, 2, q(7, 2), fin(5, 2)).unwrap();
        let d = e.get("diameter").unwrap();
        assert!(d.satisfied);
        assert_eq!(d.right, BoundValue::Exact(q(5, 1)));
        assert!(e.all_satisfied());

        let e = nonempty_ne_bounds(7, 5, 2, q(7, 2), fin(6, 1)).unwrap();
        assert!(!e.get("diameter").unwrap().satisfied);

        let e = nonempty_ne_bounds(10, 5, 2, q(7, 2), fin(5, 1)).unwrap();
        assert!(!e.get("player-count").unwrap().satisfied);

        let e = nonempty_ne_bounds(5, 2, 1, q(1, 1), fin(2, 1)).unwrap();
        assert!(e.get("player-count").unwrap().vacuous);
        assert!(nonempty_ne_bounds(5, 1, 0, q(1, 1), fin(2, 1)).is_err());
    }

    #[test]
    fn cost_lower_bound() {
        assert_eq!(component_cost_lower_bound(4, 3, q(4, 1), fin(3, 1)).bound, q(30, 1));
        assert_eq!(component_cost_lower_bound(1, 0, q(4, 1), fin(3, 1)).bound, q(0, 1));
        // Stars meet the bound with equality.
        let p = GameParams::new(4, q(3, 1), fin(5, 2)).unwrap();
        let star = canonical_state(CanonicalKind::CenterStar(0), 4).unwrap();
        let lb = component_cost_lower_bound(4, 3, p.alpha, p.beta);
        assert_eq!(Cost::Finite(lb.bound), social_cost(&star, &p));
        assert_eq!(lb.bound, q(27, 1));
        // 3 >= 5/2*4 - 6 = 4 fails, so the chain is not claimed.
        assert!(!lb.chain_valid);
        let lb = component_cost_lower_bound(4, 3, q(5, 1), fin(5, 2));
        assert!(lb.chain_valid);
        assert!(lb.bound >= lb.chained.unwrap());
    }

    #[test]
    fn poa_bounds() {
        let p = GameParams::new(5, q(3, 1), fin(5, 2)).unwrap();
        let b = analytic_poa_bound(&p);
        assert_eq!(b.region, PoaRegion::StarOptimum);
        assert_eq!(b.empty_ratio, Some(q(25, 22)));

        let p = GameParams::new(4, q(1, 2), fin(7, 5)).unwrap();
        let b = analytic_poa_bound(&p);
        assert_eq!(b.region, PoaRegion::CompleteOptimum);
        assert_eq!(b.upper, Some(q(4, 3)));

        let p = GameParams::new(3, q(200, 1), fin(3, 1)).unwrap();
        let b = analytic_poa_bound(&p);
        assert_eq!(b.region, PoaRegion::EmptyOptimum);
        assert_eq!(b.exact, Some(q(1, 1)));

        let p = GameParams::new(4, q(1, 1), fin(5, 1)).unwrap();
        assert_eq!(analytic_poa_bound(&p).region, PoaRegion::ClassicEquivalent);
    }

    #[test]
    fn region_report_consistency() {
        let p = GameParams::new(5, q(6, 1), fin(3, 1)).unwrap();
        let r = region_report(&p);
        assert_eq!(r.optimum_class, social_optimum_class(&p));
        assert!(r.disconnected_ne_possible);
        assert_eq!(r.optimum_strong_exception, Some(true));
        let labels: Vec<&str> = r.exclusions.iter().map(|e| e.label).collect();
        assert!(labels.contains(&"pair") && labels.contains(&"tree") && labels.contains(&"clique"));

        let p = GameParams::new(5, q(4, 1), fin(3, 1)).unwrap();
        assert_eq!(region_report(&p).optimum_strong_exception, Some(false));

        let p = GameParams::new(5, q(1, 1), fin(3, 1)).unwrap();
        let r = region_report(&p);
        assert!(!r.disconnected_ne_possible);
        assert_eq!(r.optimum_strong_exception, None);
    }

    #[test]
    fn component_decomposition_bound() {
        let p = GameParams::new(5, q(3, 1), fin(5, 2)).unwrap();
        let s = StrategyVector::from_targets(&[&[1, 2], &[], &[], &[4], &[]]).unwrap();
        let c = compo_poa_decomposition(&s, &p).unwrap();
        assert!(c.holds);
        assert_eq!(c.component_ratios.len(), 2);
        assert_eq!(c.component_ratios[0].1, q(1, 1));

        let p7 = GameParams::new(7, q(7, 2), fin(5, 2)).unwrap();
        let c5 = canonical_state(CanonicalKind::Cycle(5), 7).unwrap();
        assert!(compo_poa_decomposition(&c5, &p7).unwrap().holds);

        let star = canonical_state(CanonicalKind::CenterStar(0), 5).unwrap();
        assert_eq!(compo_poa_decomposition(&star, &p), Err(Error::Connected));
    }
}
