//! Reflections, involutions and the alignment of generating sets for two-dimensional systems.

mod alignment;
mod generator_map;
mod invariants;
mod involution;
mod iso_search;
mod matching;

pub use alignment::{align_generating_sets, twist_generating_set, Alignment, AlignmentChecks};
pub use generator_map::{Bijectivity, GeneratorMap, MapFile, PresentationSpec};
pub use invariants::{
    compare_invariants, compare_systems, diagram_invariants, DiagramInvariants,
    InvariantComparison, SystemComparison,
};
pub use involution::{
    classify_involution, involution_normal_form, is_reflection, InvolutionClass, InvolutionKind,
    InvolutionNormalForm,
};
pub use iso_search::{find_isomorphism, IsomorphismSearch};
pub use matching::{
    match_spherical_subgroup, resolve_pseudo_transposition, PseudoTranspositionResolution, CLAUSES,
};

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Generator, Order};
use crate::spherical;
use crate::system::CoxeterSystem;
use crate::word::GroupElement;

/// Whether `s` and `t` are joined by a path of odd finite labels, which is exactly when they are
/// conjugate in `W`.
pub fn conjugate_generators(m: &CoxeterMatrix, s: Generator, t: Generator) -> Result<bool> {
    m.check_generator(s)?;
    m.check_generator(t)?;
    let mut seen = vec![false; m.rank()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(x) = stack.pop() {
        if x == t {
            return Ok(true);
        }
        for y in m.generators() {
            if !seen[y] && matches!(m.order(x, y), Order::Finite(k) if k % 2 == 1) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    Ok(false)
}

/// Order of an element. A torsion element lies in a conjugate of a finite parabolic, so its
/// order is at most the largest finite parabolic order; anything beyond that is infinite.
pub fn element_order(sys: &CoxeterSystem, g: &GroupElement) -> Result<Order> {
    let bound = spherical::max_spherical_order(sys.matrix());
    let mut x = g.clone();
    let mut k: u128 = 1;
    while k <= bound {
        if x.is_identity() {
            return Ok(Order::Finite(k as u32));
        }
        x = sys.multiply(&x, g)?;
        k += 1;
    }
    Ok(Order::Infinity)
}

/// Elements of length at most `radius`, in shortlex order of their normal forms, stopping early
/// once `cap` elements have been collected.
pub(crate) fn ball(sys: &CoxeterSystem, radius: usize, cap: usize) -> Result<Vec<GroupElement>> {
    let mut out = vec![sys.identity()];
    let mut layer = vec![sys.identity()];
    for _ in 0..radius {
        let mut next = BTreeSet::new();
        for x in &layer {
            for g in sys.matrix().generators() {
                let y = sys.multiply_generator(x, g)?;
                if y.length() > x.length() {
                    next.insert(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next.into_iter().collect();
        for y in &layer {
            if out.len() >= cap {
                return Ok(out);
            }
            out.push(y.clone());
        }
    }
    Ok(out)
}

/// The subgroup generated by `gens`, failing with [`Error::ClosureTooLarge`] beyond `cap` elements.
pub(crate) fn closure(
    sys: &CoxeterSystem,
    gens: &[GroupElement],
    cap: usize,
) -> Result<BTreeSet<GroupElement>> {
    let mut seen: HashSet<GroupElement> = HashSet::from([sys.identity()]);
    let mut stack = vec![sys.identity()];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = sys.multiply(&x, g)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::ClosureTooLarge(cap));
                }
                stack.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
