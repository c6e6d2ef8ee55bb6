use crate::error::{Error, Result};
use crate::matrix::{Generator, Order, ParabolicSubset};
use crate::spherical;
use crate::word::GroupElement;

use super::{ball, classify_involution, closure, GeneratorMap, InvolutionClass};

/// Finds `T'` and `w'` with `φ(W_T) = w' W'_{T'} w'⁻¹`, scanning `w'` over the target ball of
/// the given radius in shortlex order. The first hit wins.
pub fn match_spherical_subgroup(
    phi: &GeneratorMap,
    subset: ParabolicSubset,
    search_radius: usize,
) -> Result<(ParabolicSubset, GroupElement)> {
    let src = phi.source();
    let tgt = phi.target();
    for s in subset.iter() {
        src.matrix().check_generator(s)?;
    }
    let Some(order) = spherical::parabolic_order(src.matrix(), subset) else {
        return Err(Error::NotSpherical(subset));
    };
    let images: Vec<_> = subset.iter().map(|s| phi.image(s).clone()).collect();
    let check_ambiguity = spherical::is_maximal_spherical(src.matrix(), subset);
    let cap = tgt.limits().closure_cap;

    let mut found: Option<(ParabolicSubset, GroupElement)> = None;
    for w in ball(tgt, search_radius, cap)? {
        if let Some((_, first)) = &found {
            if w.length() > first.length() || !check_ambiguity {
                break;
            }
        }
        let w_inv = tgt.invert(&w)?;
        let conjugated = images
            .iter()
            .map(|a| tgt.conjugate(&w_inv, a))
            .collect::<Result<Vec<_>>>()?;
        let candidate = conjugated
            .iter()
            .fold(ParabolicSubset::EMPTY, |acc, c| acc.union(c.support()));
        if spherical::parabolic_order(tgt.matrix(), candidate) != Some(order) {
            continue;
        }
        if closure(tgt, &conjugated, order as usize)?.len() as u128 != order {
            continue;
        }
        if let ([s, t], [a, b]) = (
            subset.iter().collect::<Vec<_>>().as_slice(),
            candidate.iter().collect::<Vec<_>>().as_slice(),
        ) {
            let (m, m2) = (src.matrix().order(*s, *t), tgt.matrix().order(*a, *b));
            if m != m2 {
                return Err(Error::CheckFailed {
                    clause: "labels",
                    detail: format!("edge label {m} matched with {m2}"),
                });
            }
        }
        match &found {
            None => found = Some((candidate, w)),
            Some((first, _)) if *first != candidate => return Err(Error::AmbiguousMatch),
            Some(_) => {}
        }
    }
    found.ok_or(Error::NotFoundInRadius(search_radius))
}

/// A generator whose image is not a reflection, and how its image sits in the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoTranspositionResolution {
    pub s: Generator,
    pub partner_t: Generator,
    /// `(s', t')` with `φ(t) = w' t' w'⁻¹`.
    pub target_pair: (Generator, Generator),
    pub conjugator_w: GroupElement,
}

/// The seven facts checked for every resolution, in order.
pub const CLAUSES: [&str; 7] = [
    "m(s,t) = 2",
    "m(s,u) = inf for u outside {s,t}",
    "phi(W_{s,t}) = w' W'_{s',t'} w'^-1",
    "m'(s',t') = 2",
    "m'(s',u') = inf for u' outside {s',t'}",
    "phi(s) = w' s't' w'^-1",
    "phi(t) = w' t' w'^-1",
];

impl PseudoTranspositionResolution {
    /// Evaluates every clause of [`CLAUSES`].
    pub fn check(&self, phi: &GeneratorMap) -> Result<[bool; 7]> {
        let src = phi.source();
        let tgt = phi.target();
        let (m, m2) = (src.matrix(), tgt.matrix());
        let (s, t) = (self.s, self.partner_t);
        let (s2, t2) = self.target_pair;
        let w = &self.conjugator_w;
        let isolated = |m: &crate::CoxeterMatrix, a: Generator, b: Generator| {
            m.generators()
                .filter(|&u| u != a && u != b)
                .all(|u| m.order(a, u) == Order::Infinity)
        };

        let image_group = closure(tgt, &[phi.image(s).clone(), phi.image(t).clone()], 64).ok();
        let local = closure(tgt, &[tgt.generator(s2)?, tgt.generator(t2)?], 64)?;
        let conjugated = local
            .iter()
            .map(|x| tgt.conjugate(w, x))
            .collect::<Result<std::collections::BTreeSet<_>>>()?;

        Ok([
            m.order(s, t) == Order::Finite(2),
            isolated(m, s, t),
            image_group.as_ref() == Some(&conjugated),
            m2.order(s2, t2) == Order::Finite(2),
            isolated(m2, s2, t2),
            *phi.image(s) == tgt.conjugate(w, &tgt.element(&[s2, t2])?)?,
            *phi.image(t) == tgt.conjugate(w, &tgt.generator(t2)?)?,
        ])
    }
}

/// Locates the partner `t` of a generator `s` whose image is not a reflection, together with
/// `s', t', w'`, and checks all of [`CLAUSES`].
pub fn resolve_pseudo_transposition(
    phi: &GeneratorMap,
    s: Generator,
    search_radius: usize,
) -> Result<PseudoTranspositionResolution> {
    let src = phi.source();
    let tgt = phi.target();
    src.matrix().check_generator(s)?;
    if !spherical::is_two_dimensional(src.matrix()) || !spherical::is_two_dimensional(tgt.matrix())
    {
        return Err(Error::NotTwoDimensional);
    }
    let a = phi.image(s);
    match classify_involution(tgt, a)? {
        InvolutionClass::Reflection { .. } => return Err(Error::IsReflection),
        InvolutionClass::Rotation { .. } => {}
        InvolutionClass::Other(_) => {
            return Err(Error::CheckFailed {
                clause: CLAUSES[5],
                detail: "image is neither a reflection nor a dihedral half-turn".into(),
            })
        }
    }

    let mut out_of_radius = false;
    let mut partner = None;
    for u in src.matrix().generators() {
        if u == s || !src.matrix().order(s, u).is_finite() {
            continue;
        }
        let (pair, w) =
            match match_spherical_subgroup(phi, ParabolicSubset::pair(s, u), search_radius) {
                Ok(hit) => hit,
                Err(Error::NotFoundInRadius(_)) => {
                    out_of_radius = true;
                    continue;
                }
                Err(e) => return Err(e),
            };
        let w_inv = tgt.invert(&w)?;
        if pair.len() == 2 && tgt.conjugate(&w_inv, a)?.in_parabolic(pair) {
            partner = Some((u, pair, w, w_inv));
            break;
        }
    }
    let Some((t, pair, w, w_inv)) = partner else {
        if out_of_radius {
            return Err(Error::NotFoundInRadius(search_radius));
        }
        return Err(Error::CheckFailed {
            clause: CLAUSES[2],
            detail: format!(
                "no finite edge at {} maps onto a conjugate of a dihedral parabolic containing its image",
                src.matrix().label(s)
            ),
        });
    };

    let [p, q] = pair.iter().collect::<Vec<_>>()[..] else {
        unreachable!("pair has two elements")
    };
    let t_conj = tgt.conjugate(&w_inv, phi.image(t))?;
    let target_pair = if t_conj.letters() == [p] {
        (q, p)
    } else if t_conj.letters() == [q] {
        (p, q)
    } else {
        return Err(Error::CheckFailed {
            clause: CLAUSES[6],
            detail: format!(
                "image of {} is not conjugate to a generator of the matched edge",
                src.matrix().label(t)
            ),
        });
    };

    let res = PseudoTranspositionResolution {
        s,
        partner_t: t,
        target_pair,
        conjugator_w: w,
    };
    for (ok, clause) in res.check(phi)?.into_iter().zip(CLAUSES) {
        if !ok {
            return Err(Error::CheckFailed {
                clause,
                detail: format!("fails for s = {}", src.matrix().label(s)),
            });
        }
    }
    Ok(res)
}
