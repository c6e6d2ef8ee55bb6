//! Reading and writing presentations.
//!
//! Text form:
//!
//! ```text
//! # comments run to end of line
//! gen s t u
//! m s t = 2
//! ```
//!
//! Every pair without an `m` line has `m = ∞`. The JSON form is
//! `{"generators": [...], "orders": [[...]]}` with `0` for infinity and `1` on the diagonal.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Order};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPresentation {
    pub generators: Vec<String>,
    pub orders: Vec<Vec<u32>>,
}

impl JsonPresentation {
    pub fn from_matrix(m: &CoxeterMatrix) -> Self {
        Self {
            generators: m.labels().to_vec(),
            orders: m
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(Order::to_file_int).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<CoxeterMatrix> {
        for name in &self.generators {
            check_name(name, 0)?;
        }
        let rows = self
            .orders
            .iter()
            .map(|row| row.iter().map(|&k| Order::from_file_int(k)).collect())
            .collect();
        CoxeterMatrix::new(rows, self.generators.clone())
    }
}

/// Parses either format, deciding by the first non-blank character.
pub fn parse(text: &str) -> Result<CoxeterMatrix> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_dsl(text)
    }
}

pub fn parse_json(text: &str) -> Result<CoxeterMatrix> {
    let p: JsonPresentation = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    p.to_matrix()
}

fn check_name(name: &str, line: usize) -> Result<()> {
    let mut chars = name.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '*'));
    if ok {
        Ok(())
    } else {
        Err(Error::Parse {
            line,
            message: format!("invalid generator name {name:?}"),
        })
    }
}

pub fn parse_dsl(text: &str) -> Result<CoxeterMatrix> {
    let mut names: Vec<String> = Vec::new();
    let mut labels: Vec<(usize, usize, u32, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("gen") => {
                for name in tokens {
                    check_name(name, line_no)?;
                    if names.iter().any(|n| n == name) {
                        return Err(err(format!("generator {name:?} declared twice")));
                    }
                    names.push(name.to_string());
                }
            }
            Some("m") => {
                let rest: Vec<_> = tokens.collect();
                let [a, b, "=", k] = rest.as_slice() else {
                    return Err(err("expected `m <name> <name> = <k>`".into()));
                };
                let find = |n: &str| {
                    names
                        .iter()
                        .position(|x| x == n)
                        .ok_or_else(|| err(format!("undeclared generator {n:?}")))
                };
                let (a, b) = (find(a)?, find(b)?);
                if a == b {
                    return Err(err("m of a generator with itself is fixed at 1".into()));
                }
                let k: u32 = k
                    .parse()
                    .map_err(|_| err(format!("label {k:?} is not a positive integer")))?;
                if k < 2 {
                    return Err(err(format!("label {k} must be at least 2")));
                }
                labels.push((a, b, k, line_no));
            }
            Some(other) => return Err(err(format!("unknown directive {other:?}"))),
            None => {}
        }
    }
    if names.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no generators declared".into(),
        });
    }
    let n = names.len();
    let mut rows = vec![vec![Order::Infinity; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = Order::Finite(1);
    }
    for (a, b, k, line) in labels {
        if let Order::Finite(prev) = rows[a][b] {
            if prev != k {
                return Err(Error::Parse {
                    line,
                    message: format!("conflicting labels {prev} and {k}"),
                });
            }
        }
        rows[a][b] = Order::Finite(k);
        rows[b][a] = Order::Finite(k);
    }
    CoxeterMatrix::new(rows, names)
}

/// Text form of a presentation; pairs with infinite order are omitted.
pub fn to_dsl(m: &CoxeterMatrix) -> String {
    let mut out = format!("gen {}\n", m.labels().join(" "));
    for (s, t, k) in m.pairs() {
        if let Order::Finite(k) = k {
            let _ = writeln!(out, "m {} {} = {k}", m.label(s), m.label(t));
        }
    }
    out
}

pub fn to_json(m: &CoxeterMatrix) -> serde_json::Value {
    serde_json::to_value(JsonPresentation::from_matrix(m)).expect("presentation is plain data")
}
