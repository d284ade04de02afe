//! Text formats: constraint systems and CSV matrix dumps.
//!
//! A system file starts with `vars N` and then lists one constraint per
//! line. `#` starts a comment.
//!
//! ```text
//! vars 2
//! x0 <= 3          # unary
//! x0 + x1 <= 6
//! -x0 - x1 <= 5
//! ```
//!
//! A matrix dump is `2n` CSV rows of `2n` bounds, `inf` for `+∞` and `p/q`
//! for non-integral rationals.

use std::fmt::Write as _;

use crate::bounds::{Bound, Scalar};
use crate::dbm::{Dbm, DbmStorage, OctConstraint, Sign};
use crate::error::{OctError, Result};

/// A parsed constraint system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System<N> {
    pub vars: usize,
    pub constraints: Vec<OctConstraint<N>>,
}

impl<N: Scalar> System<N> {
    pub fn to_dbm(&self) -> Result<Dbm<N>> {
        Dbm::from_constraints(self.vars, &self.constraints)
    }

    /// Renders the system in the format [`parse_system`] reads.
    pub fn to_text(&self) -> String {
        let mut s = format!("vars {}\n", self.vars);
        for c in &self.constraints {
            writeln!(s, "{c}").expect("writing to a String");
        }
        s
    }
}

fn parse_var(s: &str) -> Option<(Sign, usize, &str)> {
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (Sign::Minus, r),
        None => (Sign::Plus, s.strip_prefix('+').unwrap_or(s)),
    };
    let rest = rest.strip_prefix('x')?;
    let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
    let var = rest[..digits].parse().ok()?;
    Some((sign, var, &rest[digits..]))
}

/// Parses a single constraint such as `x0 - x1 <= 7`. Variables must be
/// below `vars`; `line` is used for error reporting.
pub fn parse_constraint<N: Scalar>(text: &str, vars: usize, line: usize) -> Result<OctConstraint<N>> {
    let err = |message: String| OctError::Parse { line, message };
    let compact: String = text.split_whitespace().collect();
    let (lhs, rhs) = compact
        .split_once("<=")
        .ok_or_else(|| err(format!("expected `<=` in `{}`", text.trim())))?;
    if rhs.is_empty() {
        return Err(err("missing bound after `<=`".into()));
    }
    let d = N::parse_literal(rhs).map_err(|e| err(e.to_string()))?;
    let bad_lhs = || err(format!("cannot read `{lhs}` as ±xi or ±xi ± xj"));
    let (si, i, rest) = parse_var(lhs).ok_or_else(bad_lhs)?;
    let c = if rest.is_empty() {
        OctConstraint::unary(si, i, d)
    } else {
        let (sj, j, tail) = parse_var(rest).ok_or_else(bad_lhs)?;
        if !tail.is_empty() || !(rest.starts_with('+') || rest.starts_with('-')) {
            return Err(bad_lhs());
        }
        if i == j {
            return Err(err(format!("x{i} appears twice")));
        }
        OctConstraint::binary(si, i, sj, j, d)
    };
    if c.max_var() >= vars {
        return Err(OctError::UnknownVariable { line, var: c.max_var(), n: vars });
    }
    Ok(c)
}

/// Parses a system file.
pub fn parse_system<N: Scalar>(text: &str) -> Result<System<N>> {
    let mut vars = None;
    let mut constraints = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        match (vars, body.strip_prefix("vars")) {
            (None, Some(count)) => {
                let n = count
                    .trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|n| *n > 0)
                    .ok_or_else(|| OctError::Parse { line, message: format!("bad header `{body}`") })?;
                vars = Some(n);
            }
            (Some(_), Some(_)) => {
                return Err(OctError::Parse { line, message: "duplicate `vars` header".into() });
            }
            (None, None) => {
                return Err(OctError::Parse { line, message: "expected `vars N` header first".into() });
            }
            (Some(n), None) => constraints.push(parse_constraint(body, n, line)?),
        }
    }
    let vars = vars.ok_or(OctError::Parse { line: 1, message: "empty system".into() })?;
    Ok(System { vars, constraints })
}

/// CSV dump of any storage, one matrix row per record.
pub fn dump_csv<N: Scalar, S: DbmStorage<N>>(m: &S) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for i in 0..m.dim() {
        w.write_record((0..m.dim()).map(|j| m.get(i, j).to_string()))
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV of ASCII fields")
}

/// Reads a [`dump_csv`] matrix back.
pub fn parse_csv<N: Scalar>(text: &str) -> Result<Dbm<N>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (idx, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| OctError::MalformedMatrix(e.to_string()))?;
        let row = rec
            .iter()
            .map(|f| Bound::parse(f))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| OctError::Parse { line: idx + 1, message: e.to_string() })?;
        rows.push(row);
    }
    Dbm::from_rows(rows)
}
