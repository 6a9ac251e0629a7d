//! Proptest strategies over a fixed small signature.

use doctrine_core::category::SemilatticeCategory;
use doctrine_core::{CtxMor, FiniteDoctrine, QFFormula, Signature, Term};
use proptest::prelude::*;

/// `const a`, `fun f/1`, `pred P/1`, `pred Q/1`, `pred R/2`, `pred E/0`.
pub fn signature() -> Signature {
    Signature::new()
        .with_constant("a")
        .unwrap()
        .with_function("f", 1)
        .unwrap()
        .with_predicate("P", 1)
        .unwrap()
        .with_predicate("Q", 1)
        .unwrap()
        .with_predicate("R", 2)
        .unwrap()
        .with_predicate("E", 0)
        .unwrap()
}

pub fn term(ctx: usize) -> BoxedStrategy<Term> {
    let leaf = if ctx == 0 {
        Just(Term::constant("a")).boxed()
    } else {
        prop_oneof![3 => (0..ctx).prop_map(Term::Var), 1 => Just(Term::constant("a"))].boxed()
    };
    leaf.prop_recursive(2, 4, 1, |inner| inner.prop_map(|t| Term::app("f", vec![t]))).boxed()
}

pub fn formula(ctx: usize) -> BoxedStrategy<QFFormula> {
    let atom = prop_oneof![
        term(ctx).prop_map(|t| QFFormula::atom("P", vec![t])),
        term(ctx).prop_map(|t| QFFormula::atom("Q", vec![t])),
        (term(ctx), term(ctx)).prop_map(|(s, t)| QFFormula::atom("R", vec![s, t])),
        Just(QFFormula::atom("E", vec![])),
        Just(QFFormula::Top),
        Just(QFFormula::Bot),
    ];
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(QFFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| QFFormula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| QFFormula::or(a, b)),
        ]
    })
    .boxed()
}

/// A term tuple `source -> target`.
pub fn ctx_mor(source: usize, target: usize) -> BoxedStrategy<CtxMor> {
    proptest::collection::vec(term(source), target).prop_map(move |comps| CtxMor::new(source, comps).unwrap()).boxed()
}

/// A finite doctrine over a chain of one to three objects, each fiber with
/// one to three atoms and random atom maps between neighbours.
pub fn finite_doctrine() -> BoxedStrategy<FiniteDoctrine> {
    (1usize..=3)
        .prop_flat_map(|n| proptest::collection::vec(1usize..=3, n))
        .prop_flat_map(|sizes| {
            let maps: Vec<BoxedStrategy<Vec<usize>>> = (1..sizes.len())
                .map(|x| proptest::collection::vec(0..sizes[x - 1], sizes[x]).boxed())
                .collect();
            (Just(sizes), maps)
        })
        .prop_map(|(sizes, maps)| {
            let names = ["t", "m", "b"];
            let atoms: Vec<Vec<String>> =
                sizes.iter().enumerate().map(|(x, &k)| (0..k).map(|i| format!("{}{i}", names[x])).collect()).collect();
            FiniteDoctrine::new(SemilatticeCategory::chain(&names[..sizes.len()]), atoms, |x, y| {
                (x == y + 1).then(|| maps[y].clone())
            })
            .unwrap()
        })
        .boxed()
}
