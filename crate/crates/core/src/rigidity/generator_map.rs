use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::enumeration;
use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Generator, Order};
use crate::presentation::{self, JsonPresentation};
use crate::system::CoxeterSystem;
use crate::word::{GroupElement, Word};

/// How far bijectivity of a [`GeneratorMap`] has been established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Bijectivity {
    /// The images generate the target (and, for finite groups, the orders agree).
    Verified,
    Refuted(String),
    /// Not every target generator was reached by products of at most this many images.
    UnverifiedAtRadius(usize),
}

/// A homomorphism `W → W'` given by the images of the source generators.
///
/// Construction checks every defining relation of the source on the images, so a value of this
/// type is always a homomorphism. Injectivity is the caller's claim; see [`Self::bijectivity`].
#[derive(Debug, Clone)]
pub struct GeneratorMap {
    source: Arc<CoxeterSystem>,
    target: Arc<CoxeterSystem>,
    images: Vec<GroupElement>,
}

impl GeneratorMap {
    pub fn new(
        source: Arc<CoxeterSystem>,
        target: Arc<CoxeterSystem>,
        images: Vec<Word>,
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} source generators",
                images.len(),
                source.rank()
            )));
        }
        let images = images
            .iter()
            .map(|w| target.reduce(w))
            .collect::<Result<Vec<_>>>()?;
        let map = Self {
            source,
            target,
            images,
        };
        map.check_relations()?;
        Ok(map)
    }

    /// The identity map of a system onto itself.
    pub fn identity(sys: Arc<CoxeterSystem>) -> Self {
        let images = sys
            .matrix()
            .generators()
            .map(|s| sys.generator(s).expect("generator in range"))
            .collect();
        Self {
            source: sys.clone(),
            target: sys,
            images,
        }
    }

    /// Conjugation `x ↦ g x g⁻¹` as a map of a system onto itself.
    pub fn inner(sys: Arc<CoxeterSystem>, g: &GroupElement) -> Result<Self> {
        let images = sys
            .matrix()
            .generators()
            .map(|s| Ok(sys.conjugate(g, &sys.generator(s)?)?.word().clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sys.clone(), sys, images)
    }

    fn check_relations(&self) -> Result<()> {
        let t = &self.target;
        for (s, img) in self.images.iter().enumerate() {
            if !t.multiply(img, img)?.is_identity() {
                return Err(Error::InvalidMap(format!(
                    "image of {} does not square to the identity",
                    self.source.matrix().label(s)
                )));
            }
        }
        for (s, u, k) in self.source.matrix().pairs() {
            let Order::Finite(k) = k else { continue };
            let prod = t.multiply(&self.images[s], &self.images[u])?;
            if !t.power(&prod, k as usize)?.is_identity() {
                let m = self.source.matrix();
                return Err(Error::InvalidMap(format!(
                    "relation ({}{})^{k} fails on the images",
                    m.label(s),
                    m.label(u)
                )));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<CoxeterSystem> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CoxeterSystem> {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn image(&self, s: Generator) -> &GroupElement {
        &self.images[s]
    }

    /// `φ(x)` for an element of the source.
    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.matrix_id() != self.source.id() {
            return Err(Error::MatrixMismatch);
        }
        let mut acc = self.target.identity();
        for &s in x.letters() {
            acc = self.target.multiply(&acc, &self.images[s])?;
        }
        Ok(acc)
    }

    /// Best-effort bijectivity check.
    pub fn bijectivity(&self, search_radius: usize, size_cap: usize) -> Result<Bijectivity> {
        let t = &self.target;
        for (i, a) in self.images.iter().enumerate() {
            if a.is_identity() {
                return Ok(Bijectivity::Refuted(format!(
                    "generator {i} maps to the identity"
                )));
            }
            if let Some(j) = self.images[..i].iter().position(|b| b == a) {
                return Ok(Bijectivity::Refuted(format!(
                    "generators {j} and {i} have the same image"
                )));
            }
        }

        // finite target: decide exactly
        let target_table = enumeration::enumerate(t.matrix(), usize::MAX, size_cap);
        if target_table.is_complete() {
            let gens: Vec<_> = self
                .images
                .iter()
                .map(|g| {
                    target_table
                        .ordinal(g)
                        .expect("complete table holds every element")
                })
                .collect();
            let generated = target_table.subgroup_ordinals(&gens)?.len();
            if generated != target_table.len() {
                return Ok(Bijectivity::Refuted(format!(
                    "images generate a subgroup of order {generated} in a group of order {}",
                    target_table.len()
                )));
            }
            return Ok(
                match enumeration::group_order(self.source.matrix(), size_cap) {
                    Some(n) if n == target_table.len() => Bijectivity::Verified,
                    Some(n) => Bijectivity::Refuted(format!(
                        "source has order {n}, target has order {}",
                        target_table.len()
                    )),
                    None => {
                        Bijectivity::Refuted("infinite source maps onto a finite target".into())
                    }
                },
            );
        }

        // products of at most `search_radius` images
        let mut wanted: HashSet<GroupElement> = t
            .matrix()
            .generators()
            .map(|s| t.generator(s))
            .collect::<Result<_>>()?;
        let mut seen = HashSet::from([t.identity()]);
        let mut layer = vec![t.identity()];
        for _ in 0..search_radius {
            let mut next = Vec::new();
            for x in &layer {
                for img in &self.images {
                    let y = match t.multiply(x, img) {
                        Ok(y) => y,
                        Err(Error::WordTooLong { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    if seen.insert(y.clone()) {
                        wanted.remove(&y);
                        next.push(y);
                    }
                }
            }
            if wanted.is_empty() {
                return Ok(Bijectivity::Verified);
            }
            layer = next;
        }
        Ok(Bijectivity::UnverifiedAtRadius(search_radius))
    }

    /// JSON file form, images as lists of target generator names.
    pub fn to_file(&self) -> MapFile {
        let sm = self.source.matrix();
        let tm = self.target.matrix();
        MapFile {
            source: PresentationSpec::Json(JsonPresentation::from_matrix(sm)),
            target: PresentationSpec::Json(JsonPresentation::from_matrix(tm)),
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(s, w)| (sm.label(s).to_string(), w.word().names(tm)))
                .collect(),
        }
    }
}

/// A presentation inside a map file: a JSON object or a text presentation in a string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresentationSpec {
    Json(JsonPresentation),
    Text(String),
}

impl PresentationSpec {
    pub fn to_matrix(&self) -> Result<CoxeterMatrix> {
        match self {
            PresentationSpec::Json(p) => p.to_matrix(),
            PresentationSpec::Text(t) => presentation::parse(t),
        }
    }
}

/// `{"source": ..., "target": ..., "images": {"s": ["a", "b"], ...}}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub source: PresentationSpec,
    pub target: PresentationSpec,
    pub images: BTreeMap<String, Vec<String>>,
}

impl MapFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn build(&self, limits: crate::Limits) -> Result<GeneratorMap> {
        let source = Arc::new(CoxeterSystem::with_limits(self.source.to_matrix()?, limits));
        let target = Arc::new(CoxeterSystem::with_limits(self.target.to_matrix()?, limits));
        let sm = source.matrix();
        let tm = target.matrix();
        for name in self.images.keys() {
            sm.generator(name)?;
        }
        let images =
            sm.labels()
                .iter()
                .map(|name| {
                    let letters = self.images.get(name).ok_or_else(|| {
                        Error::InvalidMap(format!("no image for generator {name:?}"))
                    })?;
                    letters
                        .iter()
                        .map(|l| tm.generator(l))
                        .collect::<Result<Vec<_>>>()
                        .map(Word::new)
                })
                .collect::<Result<Vec<_>>>()?;
        GeneratorMap::new(source, target, images)
    }
}
