#![allow(dead_code)]

pub mod gen;

use doctrine_core::category::SemilatticeCategory;
use doctrine_core::{parse_formula, parse_theory, FiniteDoctrine, QFFormula, SyntacticDoctrine, Term};
use rand::seq::SliceRandom;
use rand::Rng;

pub const FIX_AB: &str = "const a\nconst b\npred R/1\naxiom R(a) | R(b)\n";
pub const FIX_EMPTY: &str = "pred R/1\n";

pub fn doctrine(text: &str, inst_depth: usize, model_bound: usize) -> SyntacticDoctrine {
    SyntacticDoctrine::new(parse_theory(text).unwrap(), inst_depth, model_bound)
}

pub fn fix_ab() -> SyntacticDoctrine {
    doctrine(FIX_AB, 2, 2)
}

pub fn fix_empty() -> SyntacticDoctrine {
    doctrine(FIX_EMPTY, 2, 2)
}

pub fn f(s: &str) -> QFFormula {
    parse_formula(s).unwrap()
}

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Three doctrines over the chain `t > m > b`, every fiber with at most
/// three atoms.
pub fn fix_sl() -> Vec<FiniteDoctrine> {
    let chain = || SemilatticeCategory::chain(&["t", "m", "b"]);
    let build = |atoms: Vec<Vec<String>>, mb: Vec<usize>, tm: Vec<usize>| {
        FiniteDoctrine::new(chain(), atoms, move |x, y| match (x, y) {
            (1, 0) => Some(tm.clone()),
            (2, 1) => Some(mb.clone()),
            _ => None,
        })
        .unwrap()
    };
    vec![
        build(vec![names(&["u"]), names(&["v", "w"]), names(&["p", "q", "r"])], vec![0, 1, 1], vec![0, 0]),
        build(vec![names(&["u", "u2"]), names(&["v", "w"]), names(&["p", "q"])], vec![1, 0], vec![0, 1]),
        build(vec![names(&["u", "u2"]), names(&["v"]), names(&["p", "q", "r"])], vec![0, 0, 0], vec![0]),
    ]
}

/// Terms of depth at most one over context `n`.
pub fn small_terms(d: &SyntacticDoctrine, n: usize) -> Vec<Term> {
    doctrine_core::category::terms_up_to(&d.theory.signature, n, 1)
}

/// Literals over context `n`, their pairwise disjunctions and conjunctions
/// with a fixed first literal, plus the constants of the algebra.
pub fn sample_formulas(d: &SyntacticDoctrine, n: usize) -> Vec<QFFormula> {
    let mut atoms = Vec::new();
    for (p, arity) in &d.theory.signature.predicates {
        if *arity == 0 {
            atoms.push(QFFormula::atom(p, vec![]));
        } else if *arity == 1 {
            for t in small_terms(d, n) {
                atoms.push(QFFormula::atom(p, vec![t]));
            }
        }
    }
    let lits: Vec<QFFormula> = atoms.iter().cloned().chain(atoms.iter().map(|a| QFFormula::not(a.clone()))).collect();
    let mut out = vec![QFFormula::Top, QFFormula::Bot];
    out.extend(lits.iter().cloned());
    for (i, a) in lits.iter().enumerate() {
        for b in lits.iter().skip(i + 1) {
            out.push(QFFormula::or(a.clone(), b.clone()));
        }
        if let Some(first) = lits.first() {
            if i > 0 {
                out.push(QFFormula::and(first.clone(), a.clone()));
            }
        }
    }
    out
}

/// A random quantifier-free formula over context `n` of connective depth at
/// most `depth`.
pub fn random_formula(rng: &mut impl Rng, d: &SyntacticDoctrine, n: usize, depth: usize) -> QFFormula {
    let terms = doctrine_core::category::terms_up_to(&d.theory.signature, n, 1);
    let preds: Vec<_> = d.theory.signature.predicates.iter().filter(|(_, a)| *a <= 1).collect();
    let leaf = |rng: &mut dyn rand::RngCore| -> QFFormula {
        let (p, a) = preds.choose(rng).unwrap();
        if *a == 0 {
            QFFormula::atom(p, vec![])
        } else if terms.is_empty() {
            QFFormula::Top
        } else {
            QFFormula::atom(p, vec![terms.choose(rng).unwrap().clone()])
        }
    };
    if depth == 0 || rng.gen_bool(0.35) {
        let l = leaf(rng);
        return if rng.gen_bool(0.4) { QFFormula::not(l) } else { l };
    }
    let a = random_formula(rng, d, n, depth - 1);
    let b = random_formula(rng, d, n, depth - 1);
    match rng.gen_range(0..3) {
        0 => QFFormula::and(a, b),
        1 => QFFormula::or(a, b),
        _ => QFFormula::not(QFFormula::and(a, b)),
    }
}

/// A random signature with at most two unary predicates, two constants and
/// one unary function, with a random subset of three axioms.
pub fn random_theory(rng: &mut impl Rng) -> String {
    let mut text = String::new();
    let consts = rng.gen_range(0..=2);
    for c in ["a", "b"].iter().take(consts) {
        text.push_str(&format!("const {c}\n"));
    }
    let fun = rng.gen_bool(0.4);
    if fun {
        text.push_str("fun f/1\n");
    }
    let preds = rng.gen_range(1..=2);
    for p in ["P", "Q"].iter().take(preds) {
        text.push_str(&format!("pred {p}/1\n"));
    }
    if fun && rng.gen_bool(0.5) {
        text.push_str("axiom P(x0) -> P(f(x0))\n");
    }
    if preds == 2 && rng.gen_bool(0.5) {
        text.push_str("axiom Q(x0) -> P(x0)\n");
    }
    if consts == 2 && rng.gen_bool(0.5) {
        text.push_str("axiom P(a) | P(b)\n");
    }
    text
}
