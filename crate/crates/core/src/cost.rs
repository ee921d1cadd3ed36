use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

/// Exact rational used for prices, penalties and costs.
pub type Rational = Ratio<i128>;

/// Penalty charged per unreachable player.
///
/// `Infinite` is the classic network creation game: any unreachable player
/// makes the cost infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Penalty {
    Finite(Rational),
    Infinite,
}

impl Penalty {
    pub fn finite(&self) -> Option<Rational> {
        match self {
            Penalty::Finite(b) => Some(*b),
            Penalty::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Penalty::Infinite)
    }
}

impl PartialOrd for Penalty {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Penalty {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Penalty::Finite(a), Penalty::Finite(b)) => a.cmp(b),
            (Penalty::Finite(_), Penalty::Infinite) => Ordering::Less,
            (Penalty::Infinite, Penalty::Finite(_)) => Ordering::Greater,
            (Penalty::Infinite, Penalty::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Penalty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Penalty::Finite(b) => write!(f, "{b}"),
            Penalty::Infinite => f.write_str("inf"),
        }
    }
}

/// A cost value: an exact rational or infinity. Infinity absorbs addition
/// and compares above every rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cost {
    Finite(Rational),
    Infinite,
}

impl Cost {
    pub const ZERO: Cost = Cost::Finite(Ratio::new_raw(0, 1));

    pub fn finite(&self) -> Option<Rational> {
        match self {
            Cost::Finite(c) => Some(*c),
            Cost::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Cost::Infinite)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Cost::Finite(c) => ratio_to_f64(c),
            Cost::Infinite => f64::INFINITY,
        }
    }

    /// `self - before`, with the signs of infinite differences kept. Two
    /// infinite costs count as equal.
    pub fn delta_from(&self, before: &Cost) -> CostDelta {
        match (before, self) {
            (Cost::Finite(a), Cost::Finite(b)) => CostDelta::Finite(b - a),
            (Cost::Finite(_), Cost::Infinite) => CostDelta::PosInfinite,
            (Cost::Infinite, Cost::Finite(_)) => CostDelta::NegInfinite,
            (Cost::Infinite, Cost::Infinite) => CostDelta::Finite(Rational::zero()),
        }
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.cmp(b),
            (Cost::Finite(_), Cost::Infinite) => Ordering::Less,
            (Cost::Infinite, Cost::Finite(_)) => Ordering::Greater,
            (Cost::Infinite, Cost::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Infinite,
        }
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        *self = *self + rhs;
    }
}

impl core::iter::Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |a, b| a + b)
    }
}

impl From<Rational> for Cost {
    fn from(r: Rational) -> Self {
        Cost::Finite(r)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(c) => write!(f, "{c}"),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

/// Difference between a new and an old cost. Negative means the change
/// strictly pays off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostDelta {
    Finite(Rational),
    /// An infinite cost became finite.
    NegInfinite,
    /// A finite cost became infinite.
    PosInfinite,
}

impl CostDelta {
    pub fn is_improvement(&self) -> bool {
        match self {
            CostDelta::Finite(d) => *d < Rational::zero(),
            CostDelta::NegInfinite => true,
            CostDelta::PosInfinite => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CostDelta::Finite(d) if d.is_zero())
    }
}

impl fmt::Display for CostDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostDelta::Finite(d) => write!(f, "{d}"),
            CostDelta::NegInfinite => f.write_str("-inf"),
            CostDelta::PosInfinite => f.write_str("inf"),
        }
    }
}

pub(crate) fn ratio_to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Costs multiplied by the common denominator of `alpha` and `beta`, so the
/// hot loops compare plain integers. `INF` marks an infinite cost.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    pub alpha: i128,
    pub beta: Option<i128>,
    pub unit: i128,
}

impl Scaled {
    pub const INF: i128 = i128::MAX;

    pub fn new(alpha: Rational, beta: Penalty) -> Self {
        let unit = match beta {
            Penalty::Finite(b) => alpha.denom().lcm(b.denom()),
            Penalty::Infinite => *alpha.denom(),
        };
        let scale = |r: Rational| (r * Rational::from_integer(unit)).to_integer();
        Scaled {
            alpha: scale(alpha),
            beta: beta.finite().map(scale),
            unit,
        }
    }

    /// Cost of a player with `purchases` bought edges, distance sum `dist`
    /// and `unreached` players outside its component.
    #[inline]
    pub fn cost(&self, purchases: u32, dist: u32, unreached: u32) -> i128 {
        match self.connection(dist, unreached) {
            Self::INF => Self::INF,
            c => c + self.alpha * purchases as i128,
        }
    }

    /// Distance plus penalty part only.
    #[inline]
    pub fn connection(&self, dist: u32, unreached: u32) -> i128 {
        if unreached == 0 {
            return self.unit * dist as i128;
        }
        match self.beta {
            Some(b) => self.unit * dist as i128 + b * unreached as i128,
            None => Self::INF,
        }
    }

    pub fn to_cost(self, value: i128) -> Cost {
        if value == Self::INF {
            Cost::Infinite
        } else {
            Cost::Finite(Rational::new(value, self.unit))
        }
    }
}
