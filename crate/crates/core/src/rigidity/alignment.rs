use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{CoxeterMatrix, Generator, Order};
use crate::spherical;
use crate::system::CoxeterSystem;
use crate::word::{GroupElement, Word};

use super::{
    element_order, is_reflection, resolve_pseudo_transposition, GeneratorMap,
    PseudoTranspositionResolution,
};

/// Coxeter matrix of a list of involutions, computed from the orders of their pairwise products.
fn matrix_of(
    sys: &CoxeterSystem,
    gens: &[GroupElement],
    labels: Vec<String>,
) -> Result<CoxeterMatrix> {
    let n = gens.len();
    let mut rows = vec![vec![Order::Finite(1); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let k = element_order(sys, &sys.multiply(&gens[i], &gens[j])?)?;
            rows[i][j] = k;
            rows[j][i] = k;
        }
    }
    CoxeterMatrix::new(rows, labels)
}

fn fresh_label(taken: &[String], wanted: String) -> String {
    let mut label = wanted;
    while taken.contains(&label) {
        label.push('\'');
    }
    label
}

/// Replaces `s` by `st` where `m(s,t) = 2` and every other label at `s` is infinite.
///
/// Returns the presentation on the new generators and the map sending each new generator to
/// the element of `W` it stands for.
pub fn twist_generating_set(
    sys: &Arc<CoxeterSystem>,
    s: Generator,
    t: Generator,
) -> Result<(CoxeterMatrix, GeneratorMap)> {
    let m = sys.matrix();
    m.check_generator(s)?;
    m.check_generator(t)?;
    if s == t || m.order(s, t) != Order::Finite(2) {
        return Err(Error::HypothesisViolated(format!(
            "m({}, {}) must be 2",
            m.label(s),
            m.label(t)
        )));
    }
    if let Some(u) = m
        .generators()
        .find(|&u| u != s && u != t && m.order(s, u).is_finite())
    {
        return Err(Error::HypothesisViolated(format!(
            "m({}, {}) = {} is finite",
            m.label(s),
            m.label(u),
            m.order(s, u)
        )));
    }

    let mut labels = m.labels().to_vec();
    labels[s] = fresh_label(m.labels(), format!("{}{}", m.label(s), m.label(t)));
    let gens = m
        .generators()
        .map(|u| {
            if u == s {
                sys.element(&[s, t])
            } else {
                sys.generator(u)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let twisted = matrix_of(sys, &gens, labels)?;
    if twisted.rows() != m.rows() {
        return Err(Error::CheckFailed {
            clause: "twisted diagram",
            detail: "twisted generators do not reproduce the diagram".into(),
        });
    }
    let map = GeneratorMap::new(
        Arc::new(CoxeterSystem::with_limits(twisted.clone(), sys.limits())),
        sys.clone(),
        gens.iter().map(|g| g.word().clone()).collect(),
    )?;
    Ok((twisted, map))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlignmentChecks {
    /// The new generators carry the same diagram as the old ones.
    pub diagram_isomorphic: bool,
    /// Every new generator maps to a reflection of the target.
    pub all_reflections: bool,
    pub same_cardinality: bool,
}

impl AlignmentChecks {
    pub fn all(&self) -> bool {
        self.diagram_isomorphic && self.all_reflections && self.same_cardinality
    }
}

#[derive(Debug, Clone)]
pub struct Alignment {
    /// Generators whose image is not a reflection.
    pub s0: Vec<Generator>,
    pub resolutions: Vec<PseudoTranspositionResolution>,
    /// The new generating set, as elements of the source: `st` in place of each `s` in `s0`.
    pub new_generators: Vec<GroupElement>,
    /// Presentation on the new generators.
    pub matrix: CoxeterMatrix,
    /// From the new presentation to the target; every image is a reflection.
    pub map: GeneratorMap,
    pub checks: AlignmentChecks,
}

/// Twists every generator whose image is not a reflection, so that the composed map sends all
/// generators to reflections.
pub fn align_generating_sets(phi: &GeneratorMap, search_radius: usize) -> Result<Alignment> {
    let src = phi.source();
    let tgt = phi.target();
    if !spherical::is_two_dimensional(src.matrix()) || !spherical::is_two_dimensional(tgt.matrix())
    {
        return Err(Error::NotTwoDimensional);
    }
    let m = src.matrix();

    let mut s0 = Vec::new();
    for s in m.generators() {
        if !is_reflection(tgt, phi.image(s))? {
            s0.push(s);
        }
    }
    let resolutions = s0
        .iter()
        .map(|&s| resolve_pseudo_transposition(phi, s, search_radius))
        .collect::<Result<Vec<_>>>()?;

    let mut new_generators = m
        .generators()
        .map(|s| src.generator(s))
        .collect::<Result<Vec<_>>>()?;
    let mut labels = m.labels().to_vec();
    for r in &resolutions {
        new_generators[r.s] = src.element(&[r.s, r.partner_t])?;
        labels[r.s] = fresh_label(&labels, format!("{}{}", m.label(r.s), m.label(r.partner_t)));
    }
    let matrix = matrix_of(src, &new_generators, labels)?;

    let images = new_generators
        .iter()
        .map(|g| Ok(phi.apply(g)?.word().clone()))
        .collect::<Result<Vec<Word>>>()?;
    let map = GeneratorMap::new(
        Arc::new(CoxeterSystem::with_limits(matrix.clone(), src.limits())),
        tgt.clone(),
        images,
    )?;
    let mut all_reflections = true;
    for img in map.images() {
        all_reflections &= is_reflection(tgt, img)?;
    }
    let checks = AlignmentChecks {
        diagram_isomorphic: matrix.rows() == m.rows(),
        all_reflections,
        same_cardinality: new_generators.len() == tgt.rank(),
    };
    for (ok, clause) in [
        (checks.diagram_isomorphic, "aligned diagram"),
        (checks.all_reflections, "aligned images are reflections"),
        (checks.same_cardinality, "generating set sizes"),
    ] {
        if !ok {
            return Err(Error::CheckFailed {
                clause,
                detail: "alignment check failed".into(),
            });
        }
    }
    Ok(Alignment {
        s0,
        resolutions,
        new_generators,
        matrix,
        map,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twist_system() -> Arc<CoxeterSystem> {
        Arc::new(CoxeterSystem::new(
            CoxeterMatrix::from_edges(3, &[(0, 1, 2)])
                .unwrap()
                .with_labels(vec!["s".into(), "t".into(), "u".into()])
                .unwrap(),
        ))
    }

    #[test]
    fn twist_examples() {
        let sys = twist_system();
        let (m2, map) = twist_generating_set(&sys, 0, 1).unwrap();
        assert_eq!(m2.labels(), ["st", "t", "u"]);
        assert_eq!(m2.rows(), sys.matrix().rows());
        assert_eq!(map.image(0).letters(), &[0, 1]);

        let k4 = Arc::new(CoxeterSystem::new(
            CoxeterMatrix::from_edges(2, &[(0, 1, 2)]).unwrap(),
        ));
        let (m2, _) = twist_generating_set(&k4, 0, 1).unwrap();
        assert_eq!(m2.labels(), ["s0s1", "s1"]);

        let bad = Arc::new(CoxeterSystem::new(
            CoxeterMatrix::from_edges(3, &[(0, 1, 2), (0, 2, 3)]).unwrap(),
        ));
        assert!(matches!(
            twist_generating_set(&bad, 0, 1),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            twist_generating_set(&sys, 0, 2),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn label_collisions_are_primed() {
        let sys = Arc::new(CoxeterSystem::new(
            CoxeterMatrix::from_edges(3, &[(0, 1, 2)])
                .unwrap()
                .with_labels(vec!["a".into(), "b".into(), "ab".into()])
                .unwrap(),
        ));
        let (m2, _) = twist_generating_set(&sys, 0, 1).unwrap();
        assert_eq!(m2.labels(), ["ab'", "b", "ab"]);
    }

    #[test]
    fn identity_aligns_trivially() {
        let sys = twist_system();
        let a = align_generating_sets(&GeneratorMap::identity(sys.clone()), 4).unwrap();
        assert!(a.s0.is_empty());
        assert_eq!(a.matrix, *sys.matrix());
        assert!(a.checks.all());
    }

    #[test]
    fn twisted_target() {
        let sys = twist_system();
        let (twisted, _) = twist_generating_set(&sys, 0, 1).unwrap();
        let phi = GeneratorMap::new(
            sys.clone(),
            Arc::new(CoxeterSystem::new(twisted)),
            vec![
                Word::new(vec![0, 1]),
                Word::new(vec![1]),
                Word::new(vec![2]),
            ],
        )
        .unwrap();
        let a = align_generating_sets(&phi, 4).unwrap();
        assert_eq!(a.s0, [0]);
        assert_eq!(a.resolutions[0].partner_t, 1);
        assert_eq!(a.new_generators[0].letters(), &[0, 1]);
        assert_eq!(a.matrix.labels(), ["st", "t", "u"]);
        assert_eq!(a.map.image(0).letters(), &[0]);
        assert!(a.checks.all());
    }
}
