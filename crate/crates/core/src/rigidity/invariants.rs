use serde::Serialize;

use crate::enumeration;
use crate::matrix::{CoxeterMatrix, Order};
use crate::spherical;

/// Counts read off the diagram that draws an edge for every finite label, including 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramInvariants {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Sorted.
    pub edge_labels: Vec<u32>,
}

impl std::fmt::Display for DiagramInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<_> = self.edge_labels.iter().map(u32::to_string).collect();
        write!(
            f,
            "({}, {}, {{{}}})",
            self.vertex_count,
            self.edge_count,
            labels.join(",")
        )
    }
}

pub fn diagram_invariants(m: &CoxeterMatrix) -> DiagramInvariants {
    let mut edge_labels: Vec<u32> = m
        .pairs()
        .filter_map(|(_, _, k)| match k {
            Order::Finite(k) => Some(k),
            Order::Infinity => None,
        })
        .collect();
    edge_labels.sort_unstable();
    DiagramInvariants {
        vertex_count: m.rank(),
        edge_count: edge_labels.len(),
        edge_labels,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantComparison {
    pub left: DiagramInvariants,
    pub right: DiagramInvariants,
    pub same_vertex_count: bool,
    pub same_edge_count: bool,
    pub same_edge_labels: bool,
}

impl InvariantComparison {
    pub fn equal(&self) -> bool {
        self.same_vertex_count && self.same_edge_count && self.same_edge_labels
    }
}

pub fn compare_invariants(a: &CoxeterMatrix, b: &CoxeterMatrix) -> InvariantComparison {
    let (left, right) = (diagram_invariants(a), diagram_invariants(b));
    InvariantComparison {
        same_vertex_count: left.vertex_count == right.vertex_count,
        same_edge_count: left.edge_count == right.edge_count,
        same_edge_labels: left.edge_labels == right.edge_labels,
        left,
        right,
    }
}

/// Diagram invariants together with group orders and Davis dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemComparison {
    pub invariants: InvariantComparison,
    /// `None` for infinite groups or groups beyond the size cap.
    pub orders: (Option<usize>, Option<usize>),
    pub dimensions: (usize, usize),
    pub warnings: Vec<String>,
}

pub fn compare_systems(a: &CoxeterMatrix, b: &CoxeterMatrix, size_cap: usize) -> SystemComparison {
    let invariants = compare_invariants(a, b);
    let orders = (
        enumeration::group_order(a, size_cap),
        enumeration::group_order(b, size_cap),
    );
    let dimensions = (spherical::davis_dimension(a), spherical::davis_dimension(b));
    let mut warnings = Vec::new();
    match orders {
        (Some(x), Some(y)) if x != y && invariants.equal() => warnings.push(format!(
            "diagram invariants agree but the group orders differ ({x} vs {y}), so the groups are not isomorphic"
        )),
        (Some(x), Some(y)) if x == y && !invariants.equal() => {
            let both_2d = spherical::is_two_dimensional(a) && spherical::is_two_dimensional(b);
            warnings.push(if both_2d {
                format!("groups of equal order {x} with different diagrams")
            } else {
                format!(
                    "groups of equal order {x} with different diagrams; not both two-dimensional \
                     (Davis dimensions {} and {}), so the diagram need not be determined by the group",
                    dimensions.0, dimensions.1
                )
            });
        }
        _ => {}
    }
    SystemComparison {
        invariants,
        orders,
        dimensions,
        warnings,
    }
}
