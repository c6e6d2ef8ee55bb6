//! The poset of spherical cosets `wW_T`, truncated to a Cayley ball.
//!
//! A cell is kept when all of its vertices lie in the ball, i.e. when
//! `ℓ(rep) + ℓ(w₀(T)) ≤ radius` for its minimal representative `rep`. The truncation is then
//! closed under taking faces and its rank-≤1 part is exactly the Cayley graph induced on the
//! ball.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::enumeration;
use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, ParabolicSubset};
use crate::spherical;
use crate::system::CoxeterSystem;
use crate::word::GroupElement;

/// A coset `rep·W_T` with `T` spherical and `rep` its unique minimal-length element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphericalCoset {
    rep: GroupElement,
    subset: ParabolicSubset,
}

impl SphericalCoset {
    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    pub fn subset(&self) -> ParabolicSubset {
        self.subset
    }

    pub fn dim(&self) -> usize {
        self.subset.len()
    }
}

/// Minimal coset representative by greedy right descent in `T`.
pub fn canonical_coset(
    sys: &CoxeterSystem,
    w: &GroupElement,
    subset: ParabolicSubset,
) -> Result<SphericalCoset> {
    if !spherical::is_spherical(sys.matrix(), subset).finite {
        return Err(Error::NotSpherical(subset));
    }
    descend(sys, w.clone(), subset)
}

fn descend(
    sys: &CoxeterSystem,
    mut rep: GroupElement,
    subset: ParabolicSubset,
) -> Result<SphericalCoset> {
    'descent: loop {
        for t in subset.iter() {
            let next = sys.multiply_generator(&rep, t)?;
            if next.length() < rep.length() {
                rep = next;
                continue 'descent;
            }
        }
        return Ok(SphericalCoset { rep, subset });
    }
}

/// Left translation `g · rep·W_T`.
pub fn act(sys: &CoxeterSystem, g: &GroupElement, c: &SphericalCoset) -> Result<SphericalCoset> {
    let moved = sys.multiply(g, &c.rep)?;
    descend(sys, moved, c.subset)
}

/// A finite piece of the Davis complex: cells with their covering relation.
#[derive(Debug, Clone)]
pub struct DavisComplexTruncation {
    cells: Vec<SphericalCoset>,
    index: HashMap<SphericalCoset, usize>,
    // (face, cell) with dim(cell) = dim(face) + 1
    covers: Vec<(usize, usize)>,
    radius: usize,
    complete: bool,
    dimension: usize,
}

pub fn build_complex(sys: &CoxeterSystem, radius: usize) -> Result<DavisComplexTruncation> {
    let m = sys.matrix();
    let table = enumeration::enumerate(m, radius, usize::MAX);
    let complete = table.is_complete();
    let subsets = spherical::spherical_subsets(m);

    let mut found = BTreeSet::new();
    for &t in &subsets {
        let top = sys.longest_element(t)?.length();
        for w in table.elements() {
            let c = descend(sys, w.clone(), t)?;
            if complete || c.rep.length() + top <= radius {
                found.insert(c);
            }
        }
    }
    let mut cells: Vec<_> = found.into_iter().collect();
    cells.sort_by(|a, b| (a.dim(), a.subset, &a.rep).cmp(&(b.dim(), b.subset, &b.rep)));
    let index: HashMap<_, _> = cells
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();

    let mut covers = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        for s in m.generators().filter(|&s| !c.subset.contains(s)) {
            let bigger = c.subset.with(s);
            if !subsets.contains(&bigger) {
                continue;
            }
            let up = descend(sys, c.rep.clone(), bigger)?;
            if let Some(&j) = index.get(&up) {
                covers.push((i, j));
            }
        }
    }
    covers.sort_unstable();
    let dimension = cells.iter().map(SphericalCoset::dim).max().unwrap_or(0);

    Ok(DavisComplexTruncation {
        cells,
        index,
        covers,
        radius,
        complete,
        dimension,
    })
}

#[derive(Serialize)]
struct JsonCell {
    rep_word: Vec<String>,
    #[serde(rename = "T")]
    subset: Vec<String>,
    dim: usize,
}

#[derive(Serialize)]
struct JsonComplex {
    radius: usize,
    complete: bool,
    cells: Vec<JsonCell>,
    covers: Vec<(usize, usize)>,
}

impl DavisComplexTruncation {
    pub fn cells(&self) -> &[SphericalCoset] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &SphericalCoset {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, c: &SphericalCoset) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// True when the group is finite and the complex is the whole Davis complex.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Largest cell dimension present.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of cells of each dimension, indexed by dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dimension + 1];
        for c in &self.cells {
            counts[c.dim()] += 1;
        }
        counts
    }

    /// `cells[i] ⊆ cells[j]`, derived from the covering relation.
    pub fn le(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        let mut queue = VecDeque::from([i]);
        let mut seen = BTreeSet::from([i]);
        while let Some(x) = queue.pop_front() {
            for &(a, b) in &self.covers {
                if a == x && seen.insert(b) {
                    if b == j {
                        return true;
                    }
                    queue.push_back(b);
                }
            }
        }
        false
    }

    /// Vertices and edges of the 1-skeleton, as pairs of vertex elements.
    pub fn one_skeleton(&self) -> (Vec<GroupElement>, Vec<(GroupElement, GroupElement)>) {
        let vertices = self
            .cells
            .iter()
            .filter(|c| c.dim() == 0)
            .map(|c| c.rep.clone())
            .collect();
        let mut ends: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(a, b) in &self.covers {
            if self.cells[a].dim() == 0 {
                ends.entry(b).or_default().push(a);
            }
        }
        let mut edges: Vec<_> = ends
            .into_values()
            .filter(|v| v.len() == 2)
            .map(|v| {
                let (x, y) = (self.cells[v[0]].rep.clone(), self.cells[v[1]].rep.clone());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        edges.sort();
        (vertices, edges)
    }

    /// Index of `g · cells[i]`, or `BallEscape` if it falls outside the truncation.
    pub fn act_on(&self, sys: &CoxeterSystem, g: &GroupElement, i: usize) -> Result<usize> {
        let image = act(sys, g, &self.cells[i])?;
        self.index_of(&image).ok_or(Error::BallEscape)
    }

    /// Indices of cells mapped to themselves by `g`.
    pub fn fixed_cells(&self, sys: &CoxeterSystem, g: &GroupElement) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, c) in self.cells.iter().enumerate() {
            if act(sys, g, c)? == *c {
                out.push(i);
            }
        }
        Ok(out)
    }

    fn cell_label(&self, m: &CoxeterMatrix, i: usize) -> String {
        let c = &self.cells[i];
        if c.subset.is_empty() {
            format!("{}", c.rep.display(m))
        } else {
            format!("{} W{}", c.rep.display(m), c.subset.display(m))
        }
    }

    /// Hasse diagram of the cell poset.
    pub fn to_dot_hasse(&self, m: &CoxeterMatrix) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for i in 0..self.cells.len() {
            let _ = writeln!(
                out,
                "  c{i} [label=\"{}\", dim={}];",
                self.cell_label(m, i),
                self.cells[i].dim()
            );
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  c{a} -> c{b};");
        }
        out.push_str("}\n");
        out
    }

    /// The 1-skeleton as an undirected graph.
    pub fn to_dot_skeleton(&self, m: &CoxeterMatrix) -> String {
        let mut out = String::from("graph skeleton {\n");
        for (i, c) in self.cells.iter().enumerate() {
            if c.dim() == 0 {
                let _ = writeln!(out, "  c{i} [label=\"{}\"];", c.rep.display(m));
            }
        }
        let mut ends: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(a, b) in &self.covers {
            if self.cells[a].dim() == 0 {
                ends.entry(b).or_default().push(a);
            }
        }
        let mut edges: Vec<_> = ends.into_iter().filter(|(_, v)| v.len() == 2).collect();
        edges.sort();
        for (e, v) in edges {
            let gen = self.cells[e].subset.iter().next().unwrap_or(0);
            let _ = writeln!(
                out,
                "  c{} -- c{} [label=\"{}\"];",
                v[0],
                v[1],
                m.label(gen)
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, m: &CoxeterMatrix) -> serde_json::Value {
        let export = JsonComplex {
            radius: self.radius,
            complete: self.complete,
            cells: self
                .cells
                .iter()
                .map(|c| JsonCell {
                    rep_word: c.rep.word().names(m),
                    subset: c.subset.iter().map(|s| m.label(s).to_string()).collect(),
                    dim: c.dim(),
                })
                .collect(),
            covers: self.covers.clone(),
        };
        serde_json::to_value(export).expect("complex export is plain data")
    }
}
