use crate::enumeration::{self, EnumerationTable};
use crate::matrix::{CoxeterMatrix, Order};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsomorphismSearch {
    /// Images of the source generators, as words over the target generators.
    Found(Vec<Word>),
    NoneExists(String),
    /// One of the groups is infinite or larger than the size cap.
    Undecided(String),
}

/// Brute-force search for an isomorphism between two finite Coxeter groups: assigns involutions
/// of the target to the source generators, pruning on the orders of pairwise products, and
/// accepts the first assignment whose images generate the whole target.
pub fn find_isomorphism(
    a: &CoxeterMatrix,
    b: &CoxeterMatrix,
    size_cap: usize,
) -> IsomorphismSearch {
    let ta = enumeration::enumerate(a, usize::MAX, size_cap);
    let tb = enumeration::enumerate(b, usize::MAX, size_cap);
    if !ta.is_complete() || !tb.is_complete() {
        return IsomorphismSearch::Undecided(format!(
            "a group is infinite or has more than {size_cap} elements"
        ));
    }
    if ta.len() != tb.len() {
        return IsomorphismSearch::NoneExists(format!(
            "orders {} and {} differ",
            ta.len(),
            tb.len()
        ));
    }
    let involutions: Vec<usize> = (0..tb.len())
        .filter(|&i| tb.element_order(i) == Some(2))
        .collect();
    let mut chosen = Vec::with_capacity(a.rank());
    if extend(a, &tb, &involutions, &mut chosen) {
        IsomorphismSearch::Found(
            chosen
                .iter()
                .map(|&i| tb.element(i).word().clone())
                .collect(),
        )
    } else {
        IsomorphismSearch::NoneExists(
            "no assignment of involutions satisfies the relations and generates".into(),
        )
    }
}

fn extend(
    a: &CoxeterMatrix,
    tb: &EnumerationTable,
    involutions: &[usize],
    chosen: &mut Vec<usize>,
) -> bool {
    let i = chosen.len();
    if i == a.rank() {
        return tb
            .subgroup_ordinals(chosen)
            .map(|g| g.len() == tb.len())
            .unwrap_or(false);
    }
    for &x in involutions {
        let fits = chosen.iter().enumerate().all(|(j, &y)| {
            let order = tb.multiply(y, x).and_then(|p| tb.element_order(p));
            match a.order(j, i) {
                Order::Finite(k) => order == Some(k as usize),
                Order::Infinity => false,
            }
        });
        if fits {
            chosen.push(x);
            if extend(a, tb, involutions, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
