//! The `pcg-state v1` text format.
//!
//! ```text
//! pcg-state v1
//! n 3
//! alpha 3/2
//! beta inf
//! buys 0 : 1 2
//! buys 1 :
//! buys 2 :
//! ```
//!
//! Rationals are written `p/q` in lowest terms; integers are accepted on
//! input. Missing `buys` lines mean the player buys nothing. Several states
//! may share one file as blocks separated by blank lines.

use std::fmt::Write as _;

use pcg_core::{GameParams, Penalty, Rational, Strategy, StrategyVector};

pub const HEADER: &str = "pcg-state v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: pcg_core::Error,
    },
    #[error("no state found")]
    Empty,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// `p/q` in lowest terms with a positive denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_penalty(b: &Penalty) -> String {
    match b {
        Penalty::Finite(r) => format_rational(r),
        Penalty::Infinite => "inf".into(),
    }
}

/// Accepts `p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: i128 = num.parse().map_err(|_| format!("not a rational: {text:?}"))?;
    let q: i128 = den.parse().map_err(|_| format!("not a rational: {text:?}"))?;
    if q == 0 {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(Rational::new(p, q))
}

/// Accepts a rational or `inf`.
pub fn parse_penalty(text: &str) -> Result<Penalty, String> {
    if text.trim().eq_ignore_ascii_case("inf") {
        Ok(Penalty::Infinite)
    } else {
        parse_rational(text).map(Penalty::Finite)
    }
}

pub fn serialize_state(state: &StrategyVector, params: &GameParams) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "n {}", params.n).unwrap();
    writeln!(out, "alpha {}", format_rational(&params.alpha)).unwrap();
    writeln!(out, "beta {}", format_penalty(&params.beta)).unwrap();
    for i in 0..state.n() {
        let s = state.strategy(i);
        if s.is_empty() {
            writeln!(out, "buys {i} :").unwrap();
        } else {
            writeln!(out, "buys {i} : {s}").unwrap();
        }
    }
    out
}

/// Several states as blank-line separated blocks.
pub fn serialize_states(states: &[StrategyVector], params: &GameParams) -> String {
    states
        .iter()
        .map(|s| serialize_state(s, params))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses a single state. Trailing blocks are rejected.
pub fn parse_state(text: &str) -> Result<(StrategyVector, GameParams), ParseError> {
    let mut all = parse_states(text)?;
    if all.len() > 1 {
        return Err(ParseError::Syntax {
            line: 0,
            message: format!("expected one state, found {}", all.len()),
        });
    }
    Ok(all.remove(0))
}

pub fn parse_states(text: &str) -> Result<Vec<(StrategyVector, GameParams)>, ParseError> {
    let mut out = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            if !block.is_empty() && line.is_empty() {
                out.push(parse_block(&block)?);
                block.clear();
            }
            continue;
        }
        block.push((k + 1, line));
    }
    if !block.is_empty() {
        out.push(parse_block(&block)?);
    }
    if out.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(out)
}

fn field<'a>(lines: &[(usize, &'a str)], idx: usize, key: &str) -> Result<(usize, &'a str), ParseError> {
    let last = lines.last().map_or(0, |l| l.0);
    let &(line, text) = lines
        .get(idx)
        .ok_or_else(|| syntax(last, format!("missing `{key}` line")))?;
    match text.split_once(char::is_whitespace) {
        Some((k, v)) if k == key => Ok((line, v.trim())),
        _ => Err(syntax(line, format!("expected `{key} <value>`, found {text:?}"))),
    }
}

fn parse_block(lines: &[(usize, &str)]) -> Result<(StrategyVector, GameParams), ParseError> {
    let (first, header) = lines[0];
    if header != HEADER {
        return Err(syntax(first, format!("expected header `{HEADER}`, found {header:?}")));
    }
    let (ln, v) = field(lines, 1, "n")?;
    let n: usize = v.parse().map_err(|_| syntax(ln, format!("bad player count {v:?}")))?;
    let (la, v) = field(lines, 2, "alpha")?;
    let alpha = parse_rational(v).map_err(|m| syntax(la, m))?;
    let (lb, v) = field(lines, 3, "beta")?;
    let beta = parse_penalty(v).map_err(|m| syntax(lb, m))?;
    let params =
        GameParams::new(n, alpha, beta).map_err(|source| ParseError::Invalid { line: lb, source })?;

    let mut strategies = vec![None::<Strategy>; n];
    for &(line, text) in &lines[4..] {
        let rest = text
            .strip_prefix("buys")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| syntax(line, format!("expected `buys <i> : <targets>`, found {text:?}")))?;
        let (who, targets) = rest
            .split_once(':')
            .ok_or_else(|| syntax(line, "missing `:` after the player id"))?;
        let i: usize = who
            .trim()
            .parse()
            .map_err(|_| syntax(line, format!("bad player id {:?}", who.trim())))?;
        if i >= n {
            return Err(syntax(line, format!("player {i} is not below n = {n}")));
        }
        if strategies[i].is_some() {
            return Err(syntax(line, format!("duplicate `buys` line for player {i}")));
        }
        let mut s = Strategy::EMPTY;
        for t in targets.split_whitespace() {
            let j: usize = t.parse().map_err(|_| syntax(line, format!("bad target {t:?}")))?;
            if j == i {
                return Err(ParseError::Invalid {
                    line,
                    source: pcg_core::Error::InvalidStrategy(format!("player {i} cannot buy an edge to itself")),
                });
            }
            if j >= n {
                return Err(ParseError::Invalid {
                    line,
                    source: pcg_core::Error::InvalidStrategy(format!("target {j} is not below n = {n}")),
                });
            }
            s.insert(j);
        }
        strategies[i] = Some(s);
    }
    let state = StrategyVector::new(strategies.into_iter().map(Option::unwrap_or_default).collect())
        .map_err(|source| ParseError::Invalid {
            line: lines.last().unwrap().0,
            source,
        })?;
    Ok((state, params))
}
