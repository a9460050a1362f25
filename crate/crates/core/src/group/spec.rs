//! The group specification file format.
//!
//! One `key = value` pair per line; `#` starts a comment. Keys:
//!
//! ```text
//! name = BD8                   # optional label
//! kind = matrix                # `abelian` or `matrix`
//! n = 2                        # dimension
//! conductor = 4                # matrix kind: entries live in Q(ζ_conductor)
//! bound = 10000                # optional closure bound
//! generator = z, 0; 0, z^3     # matrix: rows split by `;`, entries by `,`
//! generator = 7 1 2 4          # abelian: `r a_1 … a_n`, or `1/7(1,2,4)`
//! expect.order = 8             # golden values checked by `mckay verify`
//! ```
//!
//! Matrix entries are expressions in `z = ζ_conductor`, integers and `E(k)`.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{close_group, FiniteGroup, GroupElement, GroupError, GroupKind, MatrixElement, WeightVector};
use super::{DEFAULT_BOUND, MAX_CONDUCTOR};
use crate::expr;

/// Largest accepted spec file.
pub const MAX_SPEC_BYTES: usize = 1 << 20;
/// Largest accepted dimension.
pub const MAX_DIM: usize = 64;
/// Largest accepted closure bound.
pub const MAX_BOUND: usize = 1_000_000;
const MAX_GENERATORS: usize = 64;
const MAX_WEIGHT_DENOMINATOR: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SpecError {
    /// 1-based line number; 0 for whole-file problems.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError { line, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: Option<String>,
    pub kind: GroupKind,
    pub n: usize,
    pub conductor: u32,
    pub bound: usize,
    pub generators: Vec<GroupElement>,
    /// `expect.*` keys with the prefix removed, in key order.
    pub expect: BTreeMap<String, String>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        close_group(self.n, &self.generators, self.bound)
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
            format!("<{}>", gens.join(", "))
        })
    }
}

fn parse_usize(line: usize, key: &str, value: &str) -> Result<usize, SpecError> {
    value.parse().or_else(|_| err(line, format!("`{key}` must be a non-negative integer, got `{value}`")))
}

/// Parses a spec file.
pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    if text.len() > MAX_SPEC_BYTES {
        return err(0, "spec file too large");
    }
    let mut header: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut raw_generators: Vec<(usize, &str)> = Vec::new();
    let mut expect = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return err(line, "expected `key = value`");
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "name" | "kind" | "n" | "conductor" | "bound" => {
                if header.insert(key, (line, value)).is_some() {
                    return err(line, format!("duplicate key `{key}`"));
                }
            }
            "generator" => {
                if raw_generators.len() == MAX_GENERATORS {
                    return err(line, format!("more than {MAX_GENERATORS} generators"));
                }
                raw_generators.push((line, value));
            }
            _ => match key.strip_prefix("expect.") {
                Some(name) if !name.is_empty() => {
                    if expect.insert(name.to_string(), value.to_string()).is_some() {
                        return err(line, format!("duplicate key `{key}`"));
                    }
                }
                _ => return err(line, format!("unknown key `{key}`")),
            },
        }
    }

    let kind = match header.get("kind") {
        Some(&(_, "abelian")) => GroupKind::AbelianDiagonal,
        Some(&(_, "matrix")) => GroupKind::Matrix,
        Some(&(line, other)) => return err(line, format!("unknown kind `{other}`; expected `abelian` or `matrix`")),
        None => return err(0, "missing key `kind`"),
    };
    let n = match header.get("n") {
        Some(&(line, v)) => {
            let n = parse_usize(line, "n", v)?;
            if n == 0 || n > MAX_DIM {
                return err(line, format!("`n` must lie in 1..={MAX_DIM}"));
            }
            n
        }
        None => return err(0, "missing key `n`"),
    };
    let bound = match header.get("bound") {
        Some(&(line, v)) => {
            let b = parse_usize(line, "bound", v)?;
            if b == 0 || b > MAX_BOUND {
                return err(line, format!("`bound` must lie in 1..={MAX_BOUND}"));
            }
            b
        }
        None => DEFAULT_BOUND,
    };
    let conductor = match header.get("conductor") {
        Some(&(line, v)) => {
            let c = parse_usize(line, "conductor", v)?;
            if c == 0 || c > MAX_CONDUCTOR as usize {
                return err(line, format!("`conductor` must lie in 1..={MAX_CONDUCTOR}"));
            }
            c as u32
        }
        None if kind == GroupKind::Matrix => return err(0, "matrix groups need a `conductor`"),
        None => 1,
    };

    let mut generators = Vec::with_capacity(raw_generators.len());
    for (line, value) in raw_generators {
        let g = match kind {
            GroupKind::AbelianDiagonal => parse_weight(line, value, n)?,
            GroupKind::Matrix => parse_matrix(line, value, n, conductor)?,
        };
        generators.push(g);
    }
    let name = header.get("name").map(|&(_, v)| v.to_string());
    Ok(GroupSpec { name, kind, n, conductor, bound, generators, expect })
}

fn parse_weight(line: usize, value: &str, n: usize) -> Result<GroupElement, SpecError> {
    let numbers: Vec<&str> = if let Some(rest) = value.strip_prefix("1/") {
        let Some((r, tail)) = rest.split_once('(') else {
            return err(line, "expected `1/r(a_1,...,a_n)`");
        };
        let Some(inner) = tail.trim().strip_suffix(')') else {
            return err(line, "missing `)`");
        };
        std::iter::once(r.trim()).chain(inner.split(',').map(str::trim)).collect()
    } else {
        value.split_whitespace().collect()
    };
    if numbers.len() != n + 1 {
        return err(line, format!("expected r followed by {n} exponents, got {} numbers", numbers.len()));
    }
    let r: u32 = match numbers[0].parse() {
        Ok(r) if (1..=MAX_WEIGHT_DENOMINATOR).contains(&r) => r,
        _ => return err(line, format!("r must be an integer in 1..={MAX_WEIGHT_DENOMINATOR}")),
    };
    let mut a = Vec::with_capacity(n);
    for s in &numbers[1..] {
        match s.parse::<i64>() {
            Ok(x) => a.push(x),
            Err(_) => return err(line, format!("`{s}` is not an integer")),
        }
    }
    let w = WeightVector::new(r, &a).or_else(|e| err(line, e.to_string()))?;
    if !w.is_special() {
        return err(line, format!("{w} does not lie in SL({n}): exponents must sum to a multiple of r"));
    }
    Ok(GroupElement::Weight(w))
}

fn parse_matrix(line: usize, value: &str, n: usize, conductor: u32) -> Result<GroupElement, SpecError> {
    let rows: Vec<&str> = value.split(';').collect();
    if rows.len() != n {
        return err(line, format!("expected {n} rows separated by `;`, got {}", rows.len()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != n {
            return err(line, format!("row {} has {} entries, expected {n}", i + 1, cells.len()));
        }
        for cell in cells {
            let e = expr::parse(cell).or_else(|e| err(line, format!("`{}`: {e}", cell.trim())))?;
            let c = expr::eval_cyclotomic(&e, conductor, "z").or_else(|e| err(line, format!("`{}`: {e}", cell.trim())))?;
            entries.push(c);
        }
    }
    let m = MatrixElement::new(n, entries).or_else(|e| err(line, e.to_string()))?;
    if !m.determinant().is_one() {
        return err(line, "matrix does not have determinant 1");
    }
    Ok(GroupElement::Matrix(m))
}
