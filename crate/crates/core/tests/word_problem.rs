mod common;

use coxeter_core::enumeration;
use coxeter_core::{CoxeterMatrix, CoxeterSystem, Parity, Word};
use proptest::prelude::*;

#[test]
fn reduction_matches_the_oracle_on_finite_fixtures() {
    for (name, _) in common::FINITE {
        common::oracle_agreement(name, 6).unwrap();
    }
}

#[test]
fn fixture_orders() {
    for (name, n) in common::FINITE {
        common::finite_order(name, n).unwrap();
    }
}

#[test]
fn reduction_matches_the_oracle_in_infinite_balls() {
    for name in common::INFINITE {
        let sys = common::system(name);
        let table = enumeration::enumerate(sys.matrix(), 7, enumeration::DEFAULT_SIZE_CAP);
        for w in common::words_up_to(sys.rank(), 7) {
            let ours = sys.reduce(&Word::new(w.clone())).unwrap();
            let theirs = table.element(table.evaluate(&w).unwrap());
            assert_eq!(&ours, theirs, "{name}: {w:?}");
        }
    }
}

fn systems() -> Vec<CoxeterSystem> {
    common::FINITE
        .iter()
        .map(|(n, _)| *n)
        .chain(common::INFINITE)
        .map(|n| CoxeterSystem::new(common::matrix(n)))
        .collect()
}

fn word(rank: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..14)
}

proptest! {
    #[test]
    fn parity_is_an_invariant(i in 0usize..10, seed in word(4)) {
        let sys = &systems()[i];
        let w: Vec<_> = seed.into_iter().filter(|&g| g < sys.rank()).collect();
        let a = sys.reduce(&Word::new(w.clone())).unwrap();
        prop_assert_eq!(a.parity(), Parity::of(w.len()));
        prop_assert!(a.length() <= w.len());
    }

    #[test]
    fn reduction_is_idempotent(i in 0usize..10, seed in word(4)) {
        let sys = &systems()[i];
        let w: Vec<_> = seed.into_iter().filter(|&g| g < sys.rank()).collect();
        let a = sys.reduce(&Word::new(w)).unwrap();
        prop_assert_eq!(sys.reduce(a.word()).unwrap(), a.clone());
        for r in sys.reduced_words(&a).unwrap() {
            prop_assert_eq!(sys.reduce(&r).unwrap(), a.clone());
        }
    }

    #[test]
    fn multiplication_is_associative_with_inverses(i in 0usize..10, x in word(4), y in word(4), z in word(4)) {
        let sys = &systems()[i];
        let r = sys.rank();
        let el = |w: Vec<usize>| sys.element(&w.into_iter().filter(|&g| g < r).collect::<Vec<_>>()).unwrap();
        let (a, b, c) = (el(x), el(y), el(z));
        let left = sys.multiply(&sys.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = sys.multiply(&a, &sys.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let inv = sys.invert(&a).unwrap();
        prop_assert!(sys.multiply(&a, &inv).unwrap().is_identity());
    }

    #[test]
    fn random_dihedral_labels_agree_with_the_oracle(k in 2u32..9, w in prop::collection::vec(0usize..2, 0..20)) {
        let sys = CoxeterSystem::new(CoxeterMatrix::from_edges(2, &[(0, 1, k)]).unwrap());
        let table = enumeration::enumerate(sys.matrix(), usize::MAX, 100);
        let ours = sys.reduce(&Word::new(w.clone())).unwrap();
        prop_assert_eq!(&ours, table.element(table.evaluate(&w).unwrap()));
    }
}
