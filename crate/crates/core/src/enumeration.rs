//! Brute-force enumeration of Cayley balls.
//!
//! Elements are identified by their matrices in the geometric representation
//! `σ_s(v) = v − 2B(e_s, v)e_s`, `B(e_s, e_t) = −cos(π/m(s,t))` (`−1` for infinity), which is
//! faithful. The enumeration never calls the braid-move engine, so it can act as an independent
//! oracle for it: breadth-first search in shortlex order discovers every element first along
//! its shortlex-least reduced word.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Generator, MatrixId, Order};
use crate::word::{GroupElement, Word};

pub const DEFAULT_RADIUS: usize = 12;
pub const DEFAULT_SIZE_CAP: usize = 20_000;

// grid used to turn float matrices into hash keys
const KEY_SCALE: f64 = 1e6;

/// A Cayley ball (or the whole group) with right-multiplication edges.
#[derive(Debug, Clone)]
pub struct EnumerationTable {
    matrix: MatrixId,
    rank: usize,
    elements: Vec<GroupElement>,
    index: HashMap<Word, usize>,
    edges: Vec<Vec<Option<usize>>>,
    radius: usize,
    complete: bool,
}

struct GeometricRep {
    rank: usize,
    form: Vec<f64>,
}

impl GeometricRep {
    fn new(m: &CoxeterMatrix) -> Self {
        let n = m.rank();
        let mut form = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                form[i * n + j] = match m.order(i, j) {
                    Order::Finite(1) => 1.0,
                    Order::Finite(k) => -(PI / k as f64).cos(),
                    Order::Infinity => -1.0,
                };
            }
        }
        Self { rank: n, form }
    }

    fn identity(&self) -> Vec<f64> {
        let n = self.rank;
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    }

    /// `M · σ_g`, matrices stored column-major.
    fn right_multiply(&self, mat: &[f64], g: Generator) -> Vec<f64> {
        let n = self.rank;
        let mut out = mat.to_vec();
        let col_g: Vec<f64> = mat[g * n..(g + 1) * n].to_vec();
        for j in 0..n {
            let c = 2.0 * self.form[g * n + j];
            if c == 0.0 {
                continue;
            }
            for (r, &x) in col_g.iter().enumerate() {
                out[j * n + r] -= c * x;
            }
        }
        out
    }

    fn key(mat: &[f64]) -> Vec<i64> {
        mat.iter().map(|x| (x * KEY_SCALE).round() as i64).collect()
    }
}

/// Enumerates the ball of radius `radius_cap` around the identity, stopping early if the
/// whole group is exhausted or `size_cap` elements have been found.
pub fn enumerate(m: &CoxeterMatrix, radius_cap: usize, size_cap: usize) -> EnumerationTable {
    let rep = GeometricRep::new(m);
    let n = m.rank();
    let id = m.id();

    let mut mats = vec![rep.identity()];
    let mut keys: HashMap<Vec<i64>, usize> = HashMap::new();
    keys.insert(GeometricRep::key(&mats[0]), 0);
    let mut words = vec![Vec::<Generator>::new()];
    let mut edges = vec![vec![None; n]];
    let mut complete = true;
    let mut layer = vec![0usize];
    let mut depth = 0;

    loop {
        let mut next = Vec::new();
        for &u in &layer {
            for g in 0..n {
                let prod = rep.right_multiply(&mats[u], g);
                let key = GeometricRep::key(&prod);
                if let Some(&v) = keys.get(&key) {
                    edges[u][g] = Some(v);
                    continue;
                }
                if depth >= radius_cap || mats.len() >= size_cap.max(1) {
                    complete = false;
                    continue;
                }
                let v = mats.len();
                let mut word = words[u].clone();
                word.push(g);
                mats.push(prod);
                words.push(word);
                edges.push(vec![None; n]);
                keys.insert(key, v);
                edges[u][g] = Some(v);
                next.push(v);
            }
        }
        if next.is_empty() {
            break;
        }
        depth += 1;
        layer = next;
    }

    let elements: Vec<GroupElement> = words
        .into_iter()
        .map(|w| GroupElement::from_canonical(Word::new(w), id))
        .collect();
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.word().clone(), i))
        .collect();
    EnumerationTable {
        matrix: id,
        rank: n,
        elements,
        index,
        edges,
        radius: depth,
        complete,
    }
}

/// `|W|` if the group has at most `size_cap` elements.
pub fn group_order(m: &CoxeterMatrix, size_cap: usize) -> Option<usize> {
    let table = enumerate(m, usize::MAX, size_cap);
    table.complete.then_some(table.len())
}

#[derive(Serialize)]
struct JsonExport<'a> {
    generators: &'a [String],
    complete: bool,
    radius: usize,
    elements: Vec<Vec<&'a str>>,
    edges: Vec<JsonEdge>,
}

#[derive(Serialize)]
struct JsonEdge {
    from: usize,
    to: usize,
    generator: usize,
}

impl EnumerationTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Depth of the last BFS layer.
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix_id(&self) -> MatrixId {
        self.matrix
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn ordinal(&self, a: &GroupElement) -> Option<usize> {
        if a.matrix_id() != self.matrix {
            return None;
        }
        self.index.get(a.word()).copied()
    }

    /// Ordinal of `elements[i] · g`, if inside the ball.
    pub fn right(&self, i: usize, g: Generator) -> Option<usize> {
        self.edges[i][g]
    }

    /// Follows the letters of `w` from element `i`.
    pub fn follow(&self, mut i: usize, w: &[Generator]) -> Option<usize> {
        for &g in w {
            i = self.edges[i][g]?;
        }
        Some(i)
    }

    /// Evaluates an arbitrary word.
    pub fn evaluate(&self, w: &[Generator]) -> Option<usize> {
        self.follow(0, w)
    }

    pub fn multiply(&self, i: usize, j: usize) -> Option<usize> {
        self.follow(i, self.elements[j].letters())
    }

    pub fn inverse(&self, i: usize) -> Option<usize> {
        let rev: Vec<_> = self.elements[i].letters().iter().rev().copied().collect();
        self.evaluate(&rev)
    }

    /// `g · a · g⁻¹`.
    pub fn conjugate(&self, g: usize, a: usize) -> Option<usize> {
        let ga = self.multiply(g, a)?;
        self.multiply(ga, self.inverse(g)?)
    }

    /// Order of an element, if its powers stay inside the ball.
    pub fn element_order(&self, i: usize) -> Option<usize> {
        let mut cur = i;
        let mut k = 1;
        while cur != 0 {
            cur = self.multiply(cur, i)?;
            k += 1;
            if k > self.len() {
                return None;
            }
        }
        Some(k)
    }

    /// All ordinals of the subgroup generated by `gens` (given as ordinals).
    pub fn subgroup_ordinals(&self, gens: &[usize]) -> Result<BTreeSet<usize>> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.multiply(x, g).ok_or(Error::BallEscape)?;
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen)
    }

    /// Closure of the given elements under multiplication.
    pub fn subgroup_elements(&self, generators: &[GroupElement]) -> Result<BTreeSet<GroupElement>> {
        let gens = generators
            .iter()
            .map(|g| {
                if g.matrix_id() != self.matrix {
                    return Err(Error::MatrixMismatch);
                }
                self.ordinal(g).ok_or(Error::BallEscape)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .subgroup_ordinals(&gens)?
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect())
    }

    /// Cayley graph as DOT, one undirected edge per generator pair `{w, ws}`.
    pub fn to_dot(&self, m: &CoxeterMatrix) -> String {
        const COLOURS: [&str; 8] = [
            "red",
            "blue",
            "darkgreen",
            "orange",
            "purple",
            "brown",
            "magenta",
            "cyan",
        ];
        let mut out = String::from("graph cayley {\n  node [shape=point];\n");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", e.display(m));
        }
        for i in 0..self.len() {
            for g in 0..self.rank {
                if let Some(j) = self.edges[i][g] {
                    if i < j {
                        let _ = writeln!(
                            out,
                            "  n{i} -- n{j} [color={}, label=\"{}\"];",
                            COLOURS[g % COLOURS.len()],
                            m.label(g)
                        );
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Adjacency as JSON: element words and generator-labelled edges between ordinals.
    pub fn to_json(&self, m: &CoxeterMatrix) -> serde_json::Value {
        let mut edges = Vec::new();
        for i in 0..self.len() {
            for g in 0..self.rank {
                if let Some(j) = self.edges[i][g] {
                    edges.push(JsonEdge {
                        from: i,
                        to: j,
                        generator: g,
                    });
                }
            }
        }
        let export = JsonExport {
            generators: m.labels(),
            complete: self.complete,
            radius: self.radius,
            elements: self
                .elements
                .iter()
                .map(|e| e.letters().iter().map(|&s| m.label(s)).collect())
                .collect(),
            edges,
        };
        serde_json::to_value(export).expect("table export is plain data")
    }
}
