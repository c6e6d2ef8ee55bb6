//! Coxeter matrices and parabolic subsets.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Index of a generator of a Coxeter system.
pub type Generator = usize;

/// Order of a product `st`. `Infinity` sorts after every finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinity,
}

impl Order {
    /// Decodes the file convention where `0` stands for infinity.
    pub fn from_file_int(k: u32) -> Order {
        if k == 0 {
            Order::Infinity
        } else {
            Order::Finite(k)
        }
    }

    pub fn to_file_int(self) -> u32 {
        match self {
            Order::Finite(k) => k,
            Order::Infinity => 0,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

/// Content hash of a Coxeter matrix; elements carry it to catch cross-system mixing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixId(u64);

/// A validated Coxeter matrix `m(s,t)` together with display names for the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    orders: Vec<Order>,
    labels: Vec<String>,
}

impl CoxeterMatrix {
    /// Validates a square array of orders. Never repairs the input.
    pub fn new(raw: Vec<Vec<Order>>, labels: Vec<String>) -> Result<Self> {
        let rank = raw.len();
        if rank == 0 {
            return Err(Error::BadShape("empty matrix".into()));
        }
        if rank > 64 {
            return Err(Error::RankTooLarge(rank));
        }
        if let Some(row) = raw.iter().position(|r| r.len() != rank) {
            return Err(Error::BadShape(format!(
                "row {row} has {} entries, expected {rank}",
                raw[row].len()
            )));
        }
        if labels.len() != rank {
            return Err(Error::BadShape(format!(
                "{} labels for rank {rank}",
                labels.len()
            )));
        }
        for (i, row) in raw.iter().enumerate() {
            if row[i] != Order::Finite(1) {
                return Err(Error::BadDiagonal(i));
            }
            for (j, &entry) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if entry != raw[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
                if let Order::Finite(k) = entry {
                    if k < 2 {
                        return Err(Error::BadOffDiagonal(i, j));
                    }
                }
            }
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::BadShape(format!("duplicate generator name {a:?}")));
            }
        }
        Ok(Self {
            rank,
            orders: raw.into_iter().flatten().collect(),
            labels,
        })
    }

    /// Validates an integer array using `0` for infinity, with default labels.
    pub fn from_file_ints(raw: &[Vec<u32>]) -> Result<Self> {
        let orders = raw
            .iter()
            .map(|row| row.iter().map(|&k| Order::from_file_int(k)).collect())
            .collect();
        Self::new(orders, default_labels(raw.len()))
    }

    /// Builds a matrix from finitely-labelled edges; every unlisted pair gets infinity.
    pub fn from_edges(rank: usize, edges: &[(Generator, Generator, u32)]) -> Result<Self> {
        let mut raw = vec![vec![Order::Infinity; rank]; rank];
        for (i, row) in raw.iter_mut().enumerate() {
            row[i] = Order::Finite(1);
        }
        for &(i, j, k) in edges {
            if i >= rank || j >= rank {
                return Err(Error::GeneratorOutOfRange {
                    index: i.max(j),
                    rank,
                });
            }
            raw[i][j] = Order::Finite(k);
            raw[j][i] = Order::Finite(k);
        }
        Self::new(raw, default_labels(rank))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        let raw = self.rows();
        self = Self::new(raw, labels)?;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self, s: Generator, t: Generator) -> Order {
        self.orders[s * self.rank + t]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: Generator) -> &str {
        &self.labels[s]
    }

    pub fn generator(&self, name: &str) -> Result<Generator> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn generators(&self) -> std::ops::Range<Generator> {
        0..self.rank
    }

    pub fn all(&self) -> ParabolicSubset {
        ParabolicSubset::full(self.rank)
    }

    pub fn rows(&self) -> Vec<Vec<Order>> {
        self.orders
            .chunks(self.rank)
            .map(<[Order]>::to_vec)
            .collect()
    }

    /// Unordered pairs `s < t` with their orders.
    pub fn pairs(&self) -> impl Iterator<Item = (Generator, Generator, Order)> + '_ {
        (0..self.rank).flat_map(move |s| (s + 1..self.rank).map(move |t| (s, t, self.order(s, t))))
    }

    /// The Coxeter matrix of the parabolic subsystem `(W_T, T)`, generators renumbered in order.
    pub fn restrict(&self, subset: ParabolicSubset) -> Result<Self> {
        let idx: Vec<_> = subset.iter().collect();
        if idx.is_empty() {
            return Err(Error::BadShape("restriction to the empty set".into()));
        }
        let raw = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.order(i, j)).collect())
            .collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        Self::new(raw, labels)
    }

    /// Identity of the presentation, ignoring labels.
    pub fn id(&self) -> MatrixId {
        let mut h = DefaultHasher::new();
        self.rank.hash(&mut h);
        self.orders.hash(&mut h);
        MatrixId(h.finish())
    }

    pub fn check_generator(&self, s: Generator) -> Result<()> {
        if s < self.rank {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange {
                index: s,
                rank: self.rank,
            })
        }
    }
}

/// `s0, s1, ...`
pub fn default_labels(rank: usize) -> Vec<String> {
    (0..rank).map(|i| format!("s{i}")).collect()
}

/// A subset `T` of the generating set, stored as a bitmask over generator indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicSubset(u64);

impl Serialize for ParabolicSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

impl ParabolicSubset {
    pub const EMPTY: ParabolicSubset = ParabolicSubset(0);

    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            ParabolicSubset(u64::MAX)
        } else {
            ParabolicSubset((1u64 << rank) - 1)
        }
    }

    pub fn singleton(s: Generator) -> Self {
        ParabolicSubset(1 << s)
    }

    pub fn pair(s: Generator, t: Generator) -> Self {
        ParabolicSubset((1 << s) | (1 << t))
    }

    pub fn from_bits(bits: u64) -> Self {
        ParabolicSubset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, s: Generator) -> bool {
        s < 64 && self.0 & (1 << s) != 0
    }

    pub fn with(self, s: Generator) -> Self {
        ParabolicSubset(self.0 | (1 << s))
    }

    pub fn without(self, s: Generator) -> Self {
        ParabolicSubset(self.0 & !(1 << s))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ParabolicSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ParabolicSubset) -> Self {
        ParabolicSubset(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Generator> {
        (0..64).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// Highest generator in the set.
    pub fn max_generator(self) -> Option<Generator> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn display<'a>(self, m: &'a CoxeterMatrix) -> impl fmt::Display + 'a {
        DisplaySubset(self, m)
    }
}

impl FromIterator<Generator> for ParabolicSubset {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        iter.into_iter()
            .fold(ParabolicSubset::EMPTY, ParabolicSubset::with)
    }
}

impl fmt::Debug for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

struct DisplaySubset<'a>(ParabolicSubset, &'a CoxeterMatrix);

impl fmt::Display for DisplaySubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.1.label(i))?;
        }
        write!(f, "}}")
    }
}
