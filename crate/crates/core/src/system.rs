//! The word-problem engine.
//!
//! Reduction follows Tits' solution: a word is reduced exactly when no sequence of braid moves
//! produces two equal adjacent letters, and any two reduced words for the same element are
//! connected by braid moves. So the closure of a word under braid moves either exposes a
//! cancellable pair (delete it and start again) or is the full set of reduced words of the
//! element, whose lexicographic minimum is the canonical form.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Generator, MatrixId, Order, ParabolicSubset};
use crate::spherical;
use crate::word::{GroupElement, Word};

/// Search caps shared by the engine and the rigidity machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Longest input word accepted by [`CoxeterSystem::reduce`].
    pub word_cap: usize,
    /// Number of equal-length states explored by conjugation descent before giving up.
    pub closure_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            word_cap: 40,
            closure_cap: 10_000,
        }
    }
}

const CACHE_LIMIT: usize = 1 << 20;

/// A Coxeter system `(W, S)` with an exact solution of its word problem.
// (canonical word, appended generator) -> canonical word of the product
type StepCache = HashMap<(Vec<Generator>, Generator), Vec<Generator>>;

#[derive(Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    id: MatrixId,
    limits: Limits,
    step_cache: RwLock<StepCache>,
}

impl Clone for CoxeterSystem {
    fn clone(&self) -> Self {
        Self::with_limits(self.matrix.clone(), self.limits)
    }
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        Self::with_limits(matrix, Limits::default())
    }

    pub fn with_limits(matrix: CoxeterMatrix, limits: Limits) -> Self {
        let id = matrix.id();
        Self {
            matrix,
            id,
            limits,
            step_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn id(&self) -> MatrixId {
        self.id
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::from_canonical(Word::empty(), self.id)
    }

    pub fn generator(&self, s: Generator) -> Result<GroupElement> {
        self.matrix.check_generator(s)?;
        Ok(GroupElement::from_canonical(Word::new(vec![s]), self.id))
    }

    /// Reduces a word given as generator indices.
    pub fn element(&self, letters: &[Generator]) -> Result<GroupElement> {
        self.reduce(&Word::from(letters))
    }

    /// Reduces a comma-separated word of generator names.
    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        self.reduce(&Word::parse(&self.matrix, text)?)
    }

    /// Shortlex-canonical reduced form of `w`.
    pub fn reduce(&self, w: &Word) -> Result<GroupElement> {
        w.check(&self.matrix)?;
        if w.len() > self.limits.word_cap {
            return Err(Error::WordTooLong {
                len: w.len(),
                cap: self.limits.word_cap,
            });
        }
        let mut current = Vec::new();
        for &g in w.letters() {
            current = self.step(current, g);
        }
        Ok(GroupElement::from_canonical(Word::new(current), self.id))
    }

    /// Canonical form of `canonical · g`, where `canonical` is already canonical.
    fn step(&self, canonical: Vec<Generator>, g: Generator) -> Vec<Generator> {
        let key = (canonical, g);
        if let Some(hit) = self.step_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut word = key.0.clone();
        word.push(g);
        let result = self.tits_normal_form(word);
        let mut cache = self.step_cache.write().unwrap();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(key, result.clone());
        result
    }

    /// Braid-move closure with cancellation, starting from an arbitrary word.
    fn tits_normal_form(&self, mut word: Vec<Generator>) -> Vec<Generator> {
        'restart: loop {
            let mut seen = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(word.clone());
            queue.push_back(word.clone());
            while let Some(w) = queue.pop_front() {
                if let Some(i) = w.windows(2).position(|p| p[0] == p[1]) {
                    word = w;
                    word.drain(i..i + 2);
                    continue 'restart;
                }
                for next in self.braid_neighbours(&w) {
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            return seen.into_iter().min().unwrap_or_default();
        }
    }

    /// All words obtained from `w` by one braid move.
    fn braid_neighbours(&self, w: &[Generator]) -> Vec<Vec<Generator>> {
        let mut out = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            let (s, t) = (w[i], w[i + 1]);
            if s == t {
                continue;
            }
            let Order::Finite(k) = self.matrix.order(s, t) else {
                continue;
            };
            let k = k as usize;
            if i + k > w.len() {
                continue;
            }
            let alternating = (0..k).all(|j| w[i + j] == if j % 2 == 0 { s } else { t });
            if alternating {
                let mut next = w.to_vec();
                for j in 0..k {
                    next[i + j] = if j % 2 == 0 { t } else { s };
                }
                out.push(next);
            }
        }
        out
    }

    /// Every reduced word of `a`, sorted lexicographically (the braid-move class of its
    /// canonical word).
    pub fn reduced_words(&self, a: &GroupElement) -> Result<Vec<Word>> {
        a.same_matrix(&self.identity())?;
        let start = a.letters().to_vec();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(w) = queue.pop_front() {
            for next in self.braid_neighbours(&w) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut words: Vec<_> = seen.into_iter().collect();
        words.sort();
        Ok(words.into_iter().map(Word::new).collect())
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        a.same_matrix(b)?;
        a.same_matrix(&self.identity())?;
        self.reduce(&a.word().concat(b.word()))
    }

    /// `a · s` for a single generator; never subject to the word cap.
    pub fn multiply_generator(&self, a: &GroupElement, s: Generator) -> Result<GroupElement> {
        a.same_matrix(&self.identity())?;
        self.matrix.check_generator(s)?;
        let letters = self.step(a.letters().to_vec(), s);
        Ok(GroupElement::from_canonical(Word::new(letters), self.id))
    }

    /// `s · a` for a single generator.
    pub fn left_multiply_generator(&self, s: Generator, a: &GroupElement) -> Result<GroupElement> {
        // s·a = (a⁻¹·s)⁻¹
        let inv = self.invert(a)?;
        let prod = self.multiply_generator(&inv, s)?;
        self.invert(&prod)
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        a.same_matrix(&self.identity())?;
        // generators are involutions, so the reversed word is reduced; only re-canonicalize
        let reversed = a.word().reversed();
        let mut current = Vec::new();
        for &g in reversed.letters() {
            current = self.step(current, g);
        }
        Ok(GroupElement::from_canonical(Word::new(current), self.id))
    }

    pub fn equal(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        a.same_matrix(b)?;
        Ok(a == b)
    }

    /// `g · a · g⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, a: &GroupElement) -> Result<GroupElement> {
        let ga = self.multiply(g, a)?;
        self.multiply(&ga, &self.invert(g)?)
    }

    pub fn power(&self, a: &GroupElement, k: usize) -> Result<GroupElement> {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// `t` with `ℓ(a·t) < ℓ(a)`.
    pub fn right_descents(&self, a: &GroupElement) -> Result<ParabolicSubset> {
        let mut out = ParabolicSubset::EMPTY;
        for t in self.matrix.generators() {
            if self.multiply_generator(a, t)?.length() < a.length() {
                out = out.with(t);
            }
        }
        Ok(out)
    }

    /// The longest element `w₀` of the finite parabolic subgroup `W_T`.
    pub fn longest_element(&self, subset: ParabolicSubset) -> Result<GroupElement> {
        if !subset.is_subset(self.matrix.all()) {
            return Err(Error::GeneratorOutOfRange {
                index: subset.max_generator().unwrap_or(0),
                rank: self.rank(),
            });
        }
        if !spherical::is_spherical(&self.matrix, subset).finite {
            return Err(Error::NotSpherical(subset));
        }
        // climb until no generator of T is an ascent; in a finite W_T that is w₀
        let mut w = self.identity();
        'climb: loop {
            for t in subset.iter() {
                let wt = self.multiply_generator(&w, t)?;
                if wt.length() > w.length() {
                    w = wt;
                    continue 'climb;
                }
            }
            break;
        }
        debug_assert!(self.is_longest_in(&w, subset)?);
        Ok(w)
    }

    /// Descent criterion: `a ∈ W_T` and `ℓ(a·t) < ℓ(a)` for every `t ∈ T`.
    pub fn is_longest_in(&self, a: &GroupElement, subset: ParabolicSubset) -> Result<bool> {
        if !a.in_parabolic(subset) {
            return Ok(false);
        }
        for t in subset.iter() {
            if self.multiply_generator(a, t)?.length() >= a.length() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Parity;

    fn dihedral(k: u32) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::from_edges(2, &[(0, 1, k)]).unwrap())
    }

    fn letters(sys: &CoxeterSystem, w: &[Generator]) -> Vec<Generator> {
        sys.element(w).unwrap().letters().to_vec()
    }

    #[test]
    fn reduce_examples() {
        let i3 = dihedral(3);
        assert_eq!(letters(&i3, &[0, 0]), Vec::<usize>::new());
        assert_eq!(letters(&i3, &[0, 1, 0, 1]), vec![1, 0]);
        let i2 = dihedral(2);
        assert_eq!(letters(&i2, &[0, 1, 0]), vec![1]);
        // sts = tst, canonical is the lex-smaller one
        assert_eq!(letters(&i3, &[1, 0, 1]), vec![0, 1, 0]);
    }

    #[test]
    fn infinite_pairs_never_braid() {
        let sys = CoxeterSystem::new(CoxeterMatrix::from_edges(2, &[]).unwrap());
        assert_eq!(letters(&sys, &[0, 1, 0, 1, 0, 1]), vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(letters(&sys, &[0, 1, 1, 0]), Vec::<usize>::new());
    }

    #[test]
    fn word_cap_is_enforced() {
        let sys = CoxeterSystem::with_limits(
            CoxeterMatrix::from_edges(2, &[]).unwrap(),
            Limits {
                word_cap: 4,
                ..Limits::default()
            },
        );
        let err = sys.element(&[0, 1, 0, 1, 0]).unwrap_err();
        assert_eq!(err, Error::WordTooLong { len: 5, cap: 4 });
        assert!(err.is_cap_exhaustion());
    }

    #[test]
    fn rejects_out_of_range_letters() {
        let sys = dihedral(3);
        assert!(matches!(
            sys.element(&[0, 2]),
            Err(Error::GeneratorOutOfRange { index: 2, rank: 2 })
        ));
    }

    #[test]
    fn group_operations() {
        let i2 = dihedral(2);
        let st = i2.element(&[0, 1]).unwrap();
        let t = i2.generator(1).unwrap();
        assert_eq!(i2.multiply(&st, &t).unwrap().letters(), &[0]);
        assert_eq!(i2.multiply(&st, &i2.identity()).unwrap(), st);

        let i3 = dihedral(3);
        let st = i3.element(&[0, 1]).unwrap();
        assert_eq!(i3.invert(&st).unwrap().letters(), &[1, 0]);
        assert!(i3
            .equal(
                &i3.element(&[0, 1, 0]).unwrap(),
                &i3.element(&[1, 0, 1]).unwrap()
            )
            .unwrap());
    }

    #[test]
    fn mixing_systems_is_an_error() {
        let a = dihedral(3);
        let b = dihedral(4);
        let x = a.generator(0).unwrap();
        let y = b.generator(0).unwrap();
        assert_eq!(a.multiply(&x, &y).unwrap_err(), Error::MatrixMismatch);
        assert_eq!(a.invert(&y).unwrap_err(), Error::MatrixMismatch);
    }

    #[test]
    fn length_parity_support() {
        let i3 = dihedral(3);
        assert_eq!(i3.identity().length(), 0);
        assert_eq!(i3.identity().parity(), Parity::Even);
        assert_eq!(i3.generator(1).unwrap().parity(), Parity::Odd);
        let x = i3.element(&[0, 1, 0, 1]).unwrap();
        assert_eq!((x.length(), x.parity()), (2, Parity::Even));
        assert!(i3.identity().support().is_empty());
        assert!(!x.in_parabolic(ParabolicSubset::singleton(0)));
        assert!(i3.identity().in_parabolic(ParabolicSubset::EMPTY));
        let i2 = dihedral(2);
        assert_eq!(
            i2.element(&[0, 1, 0]).unwrap().support(),
            ParabolicSubset::singleton(1)
        );
    }

    #[test]
    fn longest_elements() {
        let i2 = dihedral(2);
        assert!(i2
            .longest_element(ParabolicSubset::EMPTY)
            .unwrap()
            .is_identity());
        assert_eq!(
            i2.longest_element(ParabolicSubset::pair(0, 1))
                .unwrap()
                .letters(),
            &[0, 1]
        );
        let i3 = dihedral(3);
        assert_eq!(
            i3.longest_element(ParabolicSubset::pair(0, 1))
                .unwrap()
                .letters(),
            &[0, 1, 0]
        );
        let free = CoxeterSystem::new(CoxeterMatrix::from_edges(2, &[]).unwrap());
        assert_eq!(
            free.longest_element(ParabolicSubset::pair(0, 1))
                .unwrap_err(),
            Error::NotSpherical(ParabolicSubset::pair(0, 1))
        );
    }

    #[test]
    fn longest_criterion() {
        let i2 = dihedral(2);
        let st = i2.element(&[0, 1]).unwrap();
        assert!(i2.is_longest_in(&st, ParabolicSubset::pair(0, 1)).unwrap());
        assert!(i2
            .is_longest_in(&i2.identity(), ParabolicSubset::EMPTY)
            .unwrap());
        let i3 = dihedral(3);
        let s = i3.generator(0).unwrap();
        assert!(!i3.is_longest_in(&s, ParabolicSubset::pair(0, 1)).unwrap());
        // not in W_T at all
        assert!(!i3.is_longest_in(&s, ParabolicSubset::singleton(1)).unwrap());
    }

    #[test]
    fn reduced_words_of_longest_a3() {
        let a3 = CoxeterSystem::new(
            CoxeterMatrix::from_edges(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 2)]).unwrap(),
        );
        let w0 = a3.longest_element(a3.matrix().all()).unwrap();
        assert_eq!(w0.length(), 6);
        // the longest element of S_4 has 16 reduced words
        assert_eq!(a3.reduced_words(&w0).unwrap().len(), 16);
    }
}
