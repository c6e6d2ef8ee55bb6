//! Finiteness of parabolic subgroups via the classification of finite Coxeter groups.
//!
//! Classification works on the graph whose edges are pairs with label at least 3 (commuting
//! pairs split components). This is a different graph from the drawn Coxeter diagram, which
//! has an edge for every finite label including 2; see [`crate::rigidity::diagram_invariants`].

use std::fmt;

use serde::Serialize;

use crate::matrix::{CoxeterMatrix, Generator, Order, ParabolicSubset};

/// Irreducible finite Coxeter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral of order `2k`, `k ≥ 5`.
    I2(u32),
}

impl FiniteType {
    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 | FiniteType::H4 => 4,
            FiniteType::H3 => 3,
            FiniteType::I2(_) => 2,
        }
    }

    /// Group order.
    pub fn order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            FiniteType::A(n) => fact(n + 1),
            FiniteType::B(n) => (1u128 << n) * fact(n),
            FiniteType::D(n) => (1u128 << (n - 1)) * fact(n),
            FiniteType::E6 => 51_840,
            FiniteType::E7 => 2_903_040,
            FiniteType::E8 => 696_729_600,
            FiniteType::F4 => 1_152,
            FiniteType::H3 => 120,
            FiniteType::H4 => 14_400,
            FiniteType::I2(k) => 2 * k as u128,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => f.write_str("E6"),
            FiniteType::E7 => f.write_str("E7"),
            FiniteType::E8 => f.write_str("E8"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::H3 => f.write_str("H3"),
            FiniteType::H4 => f.write_str("H4"),
            FiniteType::I2(k) => write!(f, "I2({k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub finite_type: FiniteType,
    pub generators: ParabolicSubset,
}

/// Why a parabolic subgroup is (in)finite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Finite {
        components: Vec<Component>,
        order: u128,
    },
    InfinitePair {
        s: Generator,
        t: Generator,
    },
    /// A connected rank-3 component with `1/p + 1/q + 1/r ≤ 1`.
    TriangleCriterion {
        generators: ParabolicSubset,
        labels: [u32; 3],
    },
    NonCatalogComponent {
        generators: ParabolicSubset,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphericalVerdict {
    pub finite: bool,
    pub witness: Witness,
}

impl SphericalVerdict {
    /// `|W_T|` when finite.
    pub fn order(&self) -> Option<u128> {
        match &self.witness {
            Witness::Finite { order, .. } => Some(*order),
            _ => None,
        }
    }

    pub fn describe(&self, m: &CoxeterMatrix) -> String {
        match &self.witness {
            Witness::Finite { components, order } => {
                if components.is_empty() {
                    return "finite: trivial group, order 1".into();
                }
                let parts: Vec<_> = components
                    .iter()
                    .map(|c| format!("{} on {}", c.finite_type, c.generators.display(m)))
                    .collect();
                format!("finite: {}, order {order}", parts.join(" x "))
            }
            Witness::InfinitePair { s, t } => {
                format!("infinite: m({},{}) = inf", m.label(*s), m.label(*t))
            }
            Witness::TriangleCriterion { generators, labels } => format!(
                "infinite: component {} has labels {:?} with 1/p+1/q+1/r <= 1",
                generators.display(m),
                labels
            ),
            Witness::NonCatalogComponent { generators } => format!(
                "infinite: component {} is not a finite type",
                generators.display(m)
            ),
        }
    }
}

/// `1/p + 1/q + 1/r > 1`, the finiteness test for a rank-3 group with finite labels.
pub fn triangle_criterion(p: u32, q: u32, r: u32) -> bool {
    let (p, q, r) = (p as u64, q as u64, r as u64);
    p * q + q * r + r * p > p * q * r
}

/// Decides whether `W_T` is finite.
pub fn is_spherical(m: &CoxeterMatrix, subset: ParabolicSubset) -> SphericalVerdict {
    for s in subset.iter() {
        for t in subset.iter().filter(|&t| t > s) {
            if m.order(s, t) == Order::Infinity {
                return SphericalVerdict {
                    finite: false,
                    witness: Witness::InfinitePair { s, t },
                };
            }
        }
    }

    let mut components = Vec::new();
    for comp in classification_components(m, subset) {
        let catalog = classify_component(m, comp);
        if comp.len() == 3 {
            let v: Vec<_> = comp.iter().collect();
            let labels = [
                label(m, v[0], v[1]),
                label(m, v[1], v[2]),
                label(m, v[0], v[2]),
            ];
            let by_criterion = triangle_criterion(labels[0], labels[1], labels[2]);
            debug_assert_eq!(
                by_criterion,
                catalog.is_some(),
                "catalog disagrees on {labels:?}"
            );
            if !by_criterion {
                return SphericalVerdict {
                    finite: false,
                    witness: Witness::TriangleCriterion {
                        generators: comp,
                        labels,
                    },
                };
            }
        }
        match catalog {
            Some(finite_type) => components.push(Component {
                finite_type,
                generators: comp,
            }),
            None => {
                return SphericalVerdict {
                    finite: false,
                    witness: Witness::NonCatalogComponent { generators: comp },
                }
            }
        }
    }
    let order = components
        .iter()
        .map(|c| c.finite_type.order())
        .fold(1u128, u128::saturating_mul);
    SphericalVerdict {
        finite: true,
        witness: Witness::Finite { components, order },
    }
}

/// `|W_T|` if `T` is spherical.
pub fn parabolic_order(m: &CoxeterMatrix, subset: ParabolicSubset) -> Option<u128> {
    is_spherical(m, subset).order()
}

fn label(m: &CoxeterMatrix, s: Generator, t: Generator) -> u32 {
    m.order(s, t)
        .finite()
        .expect("infinite labels are rejected before classification")
}

/// Connected components of `T` in the graph with an edge wherever `m(s,t) ≥ 3` (or infinite).
pub fn classification_components(
    m: &CoxeterMatrix,
    subset: ParabolicSubset,
) -> Vec<ParabolicSubset> {
    let mut remaining = subset;
    let mut out = Vec::new();
    while let Some(start) = remaining.iter().next() {
        let mut comp = ParabolicSubset::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in subset.iter() {
                if !comp.contains(u) && m.order(u, v) > Order::Finite(2) {
                    comp = comp.with(u);
                    stack.push(u);
                }
            }
        }
        remaining = ParabolicSubset::from_bits(remaining.bits() & !comp.bits());
        out.push(comp);
    }
    out
}

/// Matches a connected component against the finite-type catalog.
fn classify_component(m: &CoxeterMatrix, comp: ParabolicSubset) -> Option<FiniteType> {
    let verts: Vec<_> = comp.iter().collect();
    let n = verts.len();
    match n {
        0 => return None,
        1 => return Some(FiniteType::A(1)),
        2 => {
            return Some(match label(m, verts[0], verts[1]) {
                3 => FiniteType::A(2),
                4 => FiniteType::B(2),
                k => FiniteType::I2(k),
            })
        }
        _ => {}
    }

    let neighbours = |v: Generator| -> Vec<Generator> {
        verts
            .iter()
            .copied()
            .filter(|&u| u != v && m.order(u, v) > Order::Finite(2))
            .collect()
    };
    let edges: Vec<(Generator, Generator, u32)> = m
        .pairs()
        .filter(|&(s, t, k)| comp.contains(s) && comp.contains(t) && k > Order::Finite(2))
        .map(|(s, t, _)| (s, t, label(m, s, t)))
        .collect();
    // connected with n-1 edges: a tree
    if edges.len() != n - 1 {
        return None;
    }
    if edges.iter().any(|&(_, _, k)| k > 5) {
        return None;
    }
    let heavy: Vec<_> = edges.iter().filter(|e| e.2 > 3).collect();
    if heavy.len() > 1 {
        return None;
    }
    let degrees: Vec<usize> = verts.iter().map(|&v| neighbours(v).len()).collect();
    let branch: Vec<_> = verts
        .iter()
        .zip(&degrees)
        .filter(|(_, &d)| d >= 3)
        .map(|(&v, &d)| (v, d))
        .collect();

    if branch.is_empty() {
        // a path; walk it from one end
        let start = verts[degrees.iter().position(|&d| d == 1)?];
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = neighbours(cur).iter().find(|&&u| u != prev) {
            path.push(next);
            prev = cur;
            cur = next;
        }
        let labels: Vec<u32> = path.windows(2).map(|p| label(m, p[0], p[1])).collect();
        let Some(heavy_pos) = labels.iter().position(|&k| k > 3) else {
            return Some(FiniteType::A(n));
        };
        let at_end = heavy_pos == 0 || heavy_pos == labels.len() - 1;
        return match (labels[heavy_pos], at_end, n) {
            (4, true, _) => Some(FiniteType::B(n)),
            (4, false, 4) => Some(FiniteType::F4),
            (5, true, 3) => Some(FiniteType::H3),
            (5, true, 4) => Some(FiniteType::H4),
            _ => None,
        };
    }

    if branch.len() != 1 || branch[0].1 != 3 || !heavy.is_empty() {
        return None;
    }
    let centre = branch[0].0;
    let mut arms: Vec<usize> = neighbours(centre)
        .into_iter()
        .map(|first| {
            let mut len = 1;
            let mut prev = centre;
            let mut cur = first;
            while let Some(&next) = neighbours(cur).iter().find(|&&u| u != prev) {
                len += 1;
                prev = cur;
                cur = next;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, c] => Some(FiniteType::D(c + 3)),
        [1, 2, 2] => Some(FiniteType::E6),
        [1, 2, 3] => Some(FiniteType::E7),
        [1, 2, 4] => Some(FiniteType::E8),
        _ => None,
    }
}

/// Every spherical subset of `S`, ordered by size then bitmask.
///
/// The family is closed under subsets, so extending sorted spherical sets by larger indices
/// reaches all of them.
pub fn spherical_subsets(m: &CoxeterMatrix) -> Vec<ParabolicSubset> {
    let mut all = vec![ParabolicSubset::EMPTY];
    let mut layer = vec![ParabolicSubset::EMPTY];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for t in &layer {
            let start = t.max_generator().map_or(0, |x| x + 1);
            for s in start..m.rank() {
                let candidate = t.with(s);
                if is_spherical(m, candidate).finite {
                    next.push(candidate);
                }
            }
        }
        next.sort();
        all.extend(next.iter().copied());
        layer = next;
    }
    all
}

/// Spherical subsets not contained in a larger spherical subset.
pub fn maximal_spherical_subsets(m: &CoxeterMatrix) -> Vec<ParabolicSubset> {
    let all = spherical_subsets(m);
    all.iter()
        .copied()
        .filter(|t| !all.iter().any(|u| u != t && t.is_subset(*u)))
        .collect()
}

pub fn is_maximal_spherical(m: &CoxeterMatrix, subset: ParabolicSubset) -> bool {
    is_spherical(m, subset).finite
        && m.generators()
            .filter(|&s| !subset.contains(s))
            .all(|s| !is_spherical(m, subset.with(s)).finite)
}

/// Dimension of the Davis complex: the largest size of a spherical subset.
pub fn davis_dimension(m: &CoxeterMatrix) -> usize {
    spherical_subsets(m).last().map_or(0, |t| t.len())
}

/// Every subset of size 3 is non-spherical and some pair is spherical.
pub fn is_two_dimensional(m: &CoxeterMatrix) -> bool {
    m.rank() >= 2 && davis_dimension(m) == 2
}

/// Largest order of a finite standard parabolic subgroup.
pub fn max_spherical_order(m: &CoxeterMatrix) -> u128 {
    spherical_subsets(m)
        .into_iter()
        .filter_map(|t| parabolic_order(m, t))
        .max()
        .unwrap_or(1)
}
