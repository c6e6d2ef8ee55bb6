//! Involutions up to conjugacy.
//!
//! A minimal-length conjugate of an involution is the longest element of the finite parabolic
//! on its support. Conjugation descent finds such a conjugate, and the descent criterion
//! certifies it after the fact.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Generator, Order, ParabolicSubset};
use crate::system::CoxeterSystem;
use crate::word::{GroupElement, Parity};

/// `input = conjugator · core · conjugator⁻¹` with `core` longest in `W_{core_support}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionNormalForm {
    pub conjugator: GroupElement,
    pub core: GroupElement,
    pub core_support: ParabolicSubset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvolutionClass {
    /// `conjugator · s · conjugator⁻¹`.
    Reflection {
        conjugator: GroupElement,
        generator: Generator,
    },
    /// `conjugator · (st)^{half_order} · conjugator⁻¹` with `m(s,t) = 2·half_order`, `s < t`.
    Rotation {
        conjugator: GroupElement,
        pair: (Generator, Generator),
        half_order: u32,
    },
    /// Core support of size at least 3; impossible in two-dimensional systems.
    Other(InvolutionNormalForm),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionKind {
    Reflection,
    Rotation,
    Other,
}

impl InvolutionClass {
    pub fn kind(&self) -> InvolutionKind {
        match self {
            InvolutionClass::Reflection { .. } => InvolutionKind::Reflection,
            InvolutionClass::Rotation { .. } => InvolutionKind::Rotation,
            InvolutionClass::Other(_) => InvolutionKind::Other,
        }
    }
}

fn is_involution(sys: &CoxeterSystem, a: &GroupElement) -> Result<bool> {
    Ok(!a.is_identity() && sys.multiply(a, a)?.is_identity())
}

/// `g · x · g` for a generator `g`.
fn conjugate_by_generator(
    sys: &CoxeterSystem,
    g: Generator,
    x: &GroupElement,
) -> Result<GroupElement> {
    let xg = sys.multiply_generator(x, g)?;
    sys.left_multiply_generator(g, &xg)
}

pub fn involution_normal_form(
    sys: &CoxeterSystem,
    a: &GroupElement,
) -> Result<InvolutionNormalForm> {
    if !is_involution(sys, a)? {
        return Err(Error::NotInvolution);
    }
    let cap = sys.limits().closure_cap;
    let mut current = a.clone();
    let mut conjugator = sys.identity();

    'descent: loop {
        // equal-length component of `current`, each state with the conjugator reaching it
        let mut states: Vec<(GroupElement, GroupElement)> =
            vec![(current.clone(), conjugator.clone())];
        let mut seen: HashMap<GroupElement, usize> = HashMap::from([(current.clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (x, v) = states[i].clone();
            for g in sys.matrix().generators() {
                let y = conjugate_by_generator(sys, g, &x)?;
                if y.length() < x.length() {
                    conjugator = sys.multiply_generator(&v, g)?;
                    current = y;
                    continue 'descent;
                }
                if y.length() == x.length() && !seen.contains_key(&y) {
                    if states.len() >= cap {
                        return Err(Error::DescentStuck(cap));
                    }
                    seen.insert(y.clone(), states.len());
                    let vg = sys.multiply_generator(&v, g)?;
                    queue.push_back(states.len());
                    states.push((y, vg));
                }
            }
        }

        // no conjugation by a generator shortens anything in the component
        let mut certified = Vec::new();
        for (x, v) in states {
            if sys.is_longest_in(&x, x.support())? {
                certified.push((x, v));
            }
        }
        let (core, conjugator) = certified
            .into_iter()
            .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
            .ok_or(Error::DescentStuck(cap))?;
        debug_assert_eq!(sys.conjugate(&conjugator, &core).ok().as_ref(), Some(a));
        return Ok(InvolutionNormalForm {
            core_support: core.support(),
            conjugator,
            core,
        });
    }
}

/// Whether `a` is conjugate to a generator.
pub fn is_reflection(sys: &CoxeterSystem, a: &GroupElement) -> Result<bool> {
    if a.parity() == Parity::Even || !is_involution(sys, a)? {
        return Ok(false);
    }
    Ok(involution_normal_form(sys, a)?.core_support.len() == 1)
}

pub fn classify_involution(sys: &CoxeterSystem, a: &GroupElement) -> Result<InvolutionClass> {
    let nf = involution_normal_form(sys, a)?;
    let support: Vec<_> = nf.core_support.iter().collect();
    match *support.as_slice() {
        [s] => Ok(InvolutionClass::Reflection {
            conjugator: nf.conjugator,
            generator: s,
        }),
        [s, t] => {
            if let Order::Finite(k) = sys.matrix().order(s, t) {
                if k % 2 == 0 {
                    let half = k / 2;
                    let st = sys.element(&[s, t])?;
                    if sys.power(&st, half as usize)? == nf.core {
                        return Ok(InvolutionClass::Rotation {
                            conjugator: nf.conjugator,
                            pair: (s, t),
                            half_order: half,
                        });
                    }
                }
            }
            Ok(InvolutionClass::Other(nf))
        }
        _ => Ok(InvolutionClass::Other(nf)),
    }
}
