use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Generator, MatrixId, ParabolicSubset};

/// A finite sequence of generator indices. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn letter_set(&self) -> ParabolicSubset {
        self.0.iter().copied().collect()
    }

    /// Parses a comma-separated list of generator names; `""` and `"1"` denote the identity.
    pub fn parse(m: &CoxeterMatrix, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        text.split(',')
            .map(|name| m.generator(name.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn check(&self, m: &CoxeterMatrix) -> Result<()> {
        self.0.iter().try_for_each(|&s| m.check_generator(s))
    }

    pub fn display<'a>(&'a self, m: &'a CoxeterMatrix) -> impl fmt::Display + 'a {
        DisplayWord(&self.0, m)
    }

    pub fn names(&self, m: &CoxeterMatrix) -> Vec<String> {
        self.0.iter().map(|&s| m.label(s).to_string()).collect()
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl From<&[Generator]> for Word {
    fn from(v: &[Generator]) -> Self {
        Word(v.to_vec())
    }
}

/// Shortlex comparison: length first, then lexicographic in generator index order.
pub fn shortlex_cmp(a: &[Generator], b: &[Generator]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

struct DisplayWord<'a>(&'a [Generator], &'a CoxeterMatrix);

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.1.label(s))?;
        }
        Ok(())
    }
}

/// An element of a Coxeter group, stored as its shortlex-least reduced word.
///
/// Only [`crate::CoxeterSystem`] (and the enumeration oracle) construct these, so the word is
/// always canonical and equality of elements is equality of words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    canonical: Word,
    matrix: MatrixId,
}

impl GroupElement {
    pub(crate) fn from_canonical(canonical: Word, matrix: MatrixId) -> Self {
        Self { canonical, matrix }
    }

    pub fn word(&self) -> &Word {
        &self.canonical
    }

    pub fn letters(&self) -> &[Generator] {
        self.canonical.letters()
    }

    pub fn matrix_id(&self) -> MatrixId {
        self.matrix
    }

    /// `ℓ(w)`.
    pub fn length(&self) -> usize {
        self.canonical.len()
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.length())
    }

    /// `S(w)`: the letters of any reduced word.
    pub fn support(&self) -> ParabolicSubset {
        self.canonical.letter_set()
    }

    pub fn in_parabolic(&self, subset: ParabolicSubset) -> bool {
        self.support().is_subset(subset)
    }

    pub fn is_identity(&self) -> bool {
        self.canonical.is_empty()
    }

    pub(crate) fn same_matrix(&self, other: &GroupElement) -> Result<()> {
        if self.matrix == other.matrix {
            Ok(())
        } else {
            Err(Error::MatrixMismatch)
        }
    }

    pub fn display<'a>(&'a self, m: &'a CoxeterMatrix) -> impl fmt::Display + 'a {
        self.canonical.display(m)
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex_cmp(self.letters(), other.letters()).then_with(|| self.matrix.cmp(&other.matrix))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}
