//! Parameter sweeps emitting one CSV row per grid point.

use std::io::Write;

use pcg_core::{
    canonical_cost, components, induce_graph, social_optimum_bruteforce, social_optimum_class,
    Cost, EnumerationOptions, EquilibriumKind, EquilibriumSet, Error, GameParams, Penalty, Rational,
    StrategyVector, OPTIMUM_MAX_N,
};

use crate::parallel::enumerate_parallel;
use crate::statefile::{format_penalty, format_rational, parse_penalty, parse_rational};

pub const COLUMNS: [&str; 15] = [
    "n",
    "alpha",
    "beta",
    "mode",
    "optimum_class",
    "optimum_cost",
    "ne_count",
    "worst_ne_cost",
    "poa",
    "pos",
    "se_count",
    "worst_se_cost",
    "spoa",
    "disconnected_ne_count",
    "notes",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub ns: Vec<usize>,
    pub alphas: Vec<Rational>,
    pub betas: Vec<Penalty>,
    pub mode: EquilibriumKind,
    /// Lets six-player points run the full scan instead of being skipped.
    pub allow_six: bool,
}

impl SweepSpec {
    /// Validates every grid point up front.
    pub fn points(&self) -> Result<Vec<GameParams>, Error> {
        if self.ns.is_empty() || self.alphas.is_empty() || self.betas.is_empty() {
            return Err(Error::InvalidParams("sweep grid is empty".into()));
        }
        let mut out = Vec::with_capacity(self.ns.len() * self.alphas.len() * self.betas.len());
        for &n in &self.ns {
            for &alpha in &self.alphas {
                for &beta in &self.betas {
                    out.push(GameParams::new(n, alpha, beta)?);
                }
            }
        }
        Ok(out)
    }
}

/// One CSV row. `None` fields are written empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub params: GameParams,
    pub mode: EquilibriumKind,
    pub optimum_class: String,
    pub optimum_cost: Option<Cost>,
    pub ne_count: Option<usize>,
    pub worst_ne_cost: Option<Cost>,
    pub poa: Option<Rational>,
    pub pos: Option<Rational>,
    pub se_count: Option<usize>,
    pub worst_se_cost: Option<Cost>,
    pub spoa: Option<Rational>,
    pub disconnected_ne_count: Option<usize>,
    pub notes: Vec<String>,
}

pub fn format_cost(c: &Cost) -> String {
    match c {
        Cost::Finite(r) => format_rational(r),
        Cost::Infinite => "inf".into(),
    }
}

pub fn mode_name(kind: EquilibriumKind) -> &'static str {
    match kind {
        EquilibriumKind::Nash => "nash",
        EquilibriumKind::Strong => "strong",
    }
}

impl SweepRecord {
    pub fn fields(&self) -> [String; 15] {
        fn opt<T>(v: &Option<T>, f: impl Fn(&T) -> String) -> String {
            v.as_ref().map(f).unwrap_or_default()
        }
        [
            self.params.n.to_string(),
            format_rational(&self.params.alpha),
            format_penalty(&self.params.beta),
            mode_name(self.mode).into(),
            self.optimum_class.clone(),
            opt(&self.optimum_cost, format_cost),
            opt(&self.ne_count, ToString::to_string),
            opt(&self.worst_ne_cost, format_cost),
            opt(&self.poa, format_rational),
            opt(&self.pos, format_rational),
            opt(&self.se_count, ToString::to_string),
            opt(&self.worst_se_cost, format_cost),
            opt(&self.spoa, format_rational),
            opt(&self.disconnected_ne_count, ToString::to_string),
            self.notes.join(";"),
        ]
    }
}

fn is_disconnected(s: &StrategyVector) -> bool {
    !components(&induce_graph(s)).is_connected()
}

/// Disconnected equilibria with at least one edge.
pub fn nonempty_disconnected(set: &EquilibriumSet) -> impl Iterator<Item = &StrategyVector> {
    set.states
        .iter()
        .filter(|s| s.total_purchases() > 0 && is_disconnected(s))
}

/// Computes the record of one grid point. Guard refusals become a
/// `skipped:guard` row; any other error is returned.
pub fn sweep_point(
    params: GameParams,
    mode: EquilibriumKind,
    allow_six: bool,
    workers: usize,
) -> Result<SweepRecord, Error> {
    let class = social_optimum_class(&params);
    let mut record = SweepRecord {
        params,
        mode,
        optimum_class: class.to_string(),
        optimum_cost: None,
        ne_count: None,
        worst_ne_cost: None,
        poa: None,
        pos: None,
        se_count: None,
        worst_se_cost: None,
        spoa: None,
        disconnected_ne_count: None,
        notes: Vec::new(),
    };
    if params.n <= OPTIMUM_MAX_N {
        record.optimum_cost = Some(social_optimum_bruteforce(&params)?.cost);
    } else {
        record.optimum_cost = class
            .iter()
            .map(|shape| canonical_cost(shape, params.n, params.alpha, params.beta))
            .min();
        record.notes.push("optimum:analytic".into());
    }

    let options = EnumerationOptions {
        allow_six,
        dedupe_iso: false,
    };
    let result = match enumerate_parallel(params, mode, options, workers) {
        Ok(r) => r,
        Err(e) if e.is_guard() => {
            record.notes.insert(0, "skipped:guard".into());
            return Ok(record);
        }
        Err(e) => return Err(e),
    };
    let nash = &result.nash;
    record.ne_count = Some(nash.len());
    record.worst_ne_cost = nash.worst;
    record.poa = nash.poa;
    record.pos = nash.pos;
    record.disconnected_ne_count = Some(nash.states.iter().filter(|s| is_disconnected(s)).count());
    let nonempty = nonempty_disconnected(nash).count();
    if nonempty > 0 {
        record.notes.push(format!("nonempty-disconnected-ne={nonempty}"));
    }
    if let Some(strong) = &result.strong {
        record.se_count = Some(strong.len());
        record.worst_se_cost = strong.worst;
        record.spoa = strong.poa;
    }
    Ok(record)
}

/// Runs the whole grid in order and writes the CSV (header first) to `out`.
pub fn run_sweep<W: Write>(spec: &SweepSpec, workers: usize, out: W) -> Result<Vec<SweepRecord>, SweepError> {
    let points = spec.points()?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(COLUMNS)?;
    let mut records = Vec::with_capacity(points.len());
    for params in points {
        let record = sweep_point(params, spec.mode, spec.allow_six, workers)?;
        writer.write_record(record.fields())?;
        records.push(record);
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(records)
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Game(#[from] Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

/// Comma-separated values; an item `lo..hi:step` expands to the inclusive
/// arithmetic range. `step` defaults to 1.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            None => out.push(parse_rational(item)?),
            Some((lo, rest)) => {
                let (hi, step) = match rest.split_once(':') {
                    Some((hi, step)) => (hi, parse_rational(step)?),
                    None => (rest, Rational::from_integer(1)),
                };
                let (lo, hi) = (parse_rational(lo)?, parse_rational(hi)?);
                if step <= Rational::from_integer(0) {
                    return Err(format!("range step must be positive in {item:?}"));
                }
                if hi < lo {
                    return Err(format!("empty range {item:?}"));
                }
                let mut x = lo;
                while x <= hi {
                    out.push(x);
                    x += step;
                }
            }
        }
    }
    if out.is_empty() {
        return Err(format!("no values in {text:?}"));
    }
    Ok(out)
}

/// Like [`parse_rational_list`], with `inf` allowed as an item.
pub fn parse_penalty_list(text: &str) -> Result<Vec<Penalty>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item.contains("..") {
            out.extend(parse_rational_list(item)?.into_iter().map(Penalty::Finite));
        } else {
            out.push(parse_penalty(item)?);
        }
    }
    if out.is_empty() {
        return Err(format!("no values in {text:?}"));
    }
    Ok(out)
}

pub fn parse_count_list(text: &str) -> Result<Vec<usize>, String> {
    parse_rational_list(text)?
        .into_iter()
        .map(|r| {
            if r.is_integer() && r >= Rational::from_integer(0) {
                Ok(r.to_integer() as usize)
            } else {
                Err(format!("player count {r} is not a non-negative integer"))
            }
        })
        .collect()
}
