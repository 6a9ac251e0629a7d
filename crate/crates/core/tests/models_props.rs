mod common;

use common::gen::{ctx_mor, finite_doctrine, formula, signature};
use common::f;
use doctrine_core::free1::refute_at;
use doctrine_core::models::{enumerate_finite_models, model_at_s_eval, models_at, refutes, rich_model, AtS, NotRich};
use doctrine_core::{
    add_constant, check_family_axioms, check_pair_axioms, ultrafilters_of, valid_universal_family, Doctrine,
    FamilyKind, FiniteFamily, MixedSequent, PointSet, PropModel, QFFormula, SyntacticDoctrine, Term, Theory,
};
use proptest::prelude::*;

fn theory() -> SyntacticDoctrine {
    let axioms = vec![f("P(x0) -> Q(f(x0))"), f("R(x0, x1) -> R(x1, x0)")];
    SyntacticDoctrine::new(Theory { signature: signature(), axioms }, 1, 2)
}

/// The theory with `s` fresh constants `c0..` and no new axioms.
fn with_constants(d: &SyntacticDoctrine, s: usize) -> SyntacticDoctrine {
    let mut sig = d.theory.signature.clone();
    for i in 0..s {
        sig = sig.with_constant(&format!("c{i}")).unwrap();
    }
    SyntacticDoctrine::new(Theory { signature: sig, axioms: d.theory.axioms.clone() }, d.inst_depth, d.model_bound)
}

/// `φ(x0..x_{s-1}, y..)` with the first `s` variables replaced by `c0..`.
fn ground(phi: &QFFormula, s: usize, k: usize) -> QFFormula {
    let sigma: Vec<Term> = (0..s).map(|i| Term::constant(&format!("c{i}"))).chain((0..k).map(Term::Var)).collect();
    phi.substitute(&sigma, k).unwrap()
}

fn ground_all(items: &[(usize, QFFormula)], s: usize) -> Vec<(usize, QFFormula)> {
    items.iter().map(|(k, a)| (*k, ground(a, s, *k))).collect()
}

fn item() -> impl Strategy<Value = (usize, QFFormula)> {
    (0usize..=1).prop_flat_map(|k| (Just(k), formula(1 + k)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn structure_models_are_natural(idx in any::<prop::sample::Index>(), phi in formula(2), psi in formula(2), g in ctx_mor(1, 2)) {
        let d = theory();
        let ms = d.models();
        let m = &ms[idx.index(ms.len())];
        let pulled = m.interp(&d, &1, &d.reindex(&g, &phi).unwrap());
        let pre = PointSet::from_tuples(m.carrier(&d, &1).into_iter().filter(|v| m.interp(&d, &2, &phi).contains(&m.apply(&d, &g, v))));
        prop_assert_eq!(pulled, pre);
        let meet = m.interp(&d, &2, &d.meet(&phi, &psi));
        let (ep, eq) = (m.interp(&d, &2, &phi), m.interp(&d, &2, &psi));
        prop_assert_eq!(meet, PointSet::from_tuples(ep.0.iter().filter(|v| eq.contains(v)).cloned()));
        let neg = m.interp(&d, &2, &d.neg(&2, &phi));
        let carrier = m.carrier(&d, &2);
        let ext = m.interp(&d, &2, &phi);
        prop_assert_eq!(neg, PointSet::from_tuples(carrier.into_iter().filter(|v| !ext.contains(v))));
    }

    #[test]
    fn evaluation_at_a_point_matches_the_adjoined_doctrine(idx in any::<prop::sample::Index>(), y in 0usize..=2, seed in any::<u64>()) {
        let d = theory();
        let ms = d.models();
        let m = &ms[idx.index(ms.len())];
        let ds = add_constant(&d, 1);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let a = common::random_formula(&mut rng, &d, 1 + y, 2);
        for s in m.carrier(&d, &1) {
            let at = AtS { model: m, s: s.clone() };
            prop_assert_eq!(at.interp(&ds, &y, &a), model_at_s_eval(&d, m, &1, &s, &y, &a));
        }
    }

    #[test]
    fn points_correspond_to_models_with_constants(
        prem in proptest::collection::vec(item(), 0..=2),
        exists in proptest::collection::vec(item(), 0..=1),
        concl in proptest::collection::vec(item(), 0..=1),
    ) {
        let d = theory();
        let ms = d.models();
        let seq = MixedSequent { forall_prem: prem.clone(), exists_prem: exists.clone(), forall_concl: concl.clone(), exists_concl: vec![] };
        let at_s = refute_at(&d, &1, &ms, &seq).is_some();
        let dc = with_constants(&d, 1);
        let grounded = MixedSequent {
            forall_prem: ground_all(&prem, 1),
            exists_prem: ground_all(&exists, 1),
            forall_concl: ground_all(&concl, 1),
            exists_concl: vec![],
        };
        let plain = dc.models().iter().any(|m| refutes(&dc, m, &grounded));
        prop_assert_eq!(at_s, plain);
    }

    #[test]
    fn finite_models_give_ultrafilters(d in finite_doctrine()) {
        let ufs = ultrafilters_of(&d).unwrap();
        for m in enumerate_finite_models(&d) {
            let one = std::slice::from_ref(&m);
            let v = valid_universal_family(&d, one);
            let fam = FiniteFamily::from_fn(&d, |x, a| v.in_f(&x, &a)).unwrap();
            let ideal = FiniteFamily::from_fn(&d, |x, a| v.in_i(&x, &a)).unwrap();
            prop_assert!(check_family_axioms(&d, FamilyKind::Ultrafilter, &fam).unwrap().passed());
            prop_assert!(check_pair_axioms(&d, &fam, &ideal).unwrap().passed());
            prop_assert!(ufs.contains(&fam));
        }
        for u in &ufs {
            match rich_model(&d, |x, a| u.contains(x, a)) {
                Ok(m) => {
                    let one = std::slice::from_ref(&m);
                    let v = valid_universal_family(&d, one);
                    prop_assert_eq!(&FiniteFamily::from_fn(&d, |x, a| v.in_f(&x, &a)).unwrap(), u);
                }
                Err(NotRich::Witness { .. }) => {}
                Err(e) => prop_assert!(false, "ultrafilter {:?} rejected: {:?}", u, e),
            }
        }
    }
}

#[test]
fn class_families_form_a_pair() {
    let d = theory();
    let ms = d.models();
    let v = valid_universal_family(&d, &ms);
    for a in common::sample_formulas(&d, 1) {
        assert!(!(v.in_f(&1, &a) && v.in_i(&1, &a)) || ms.is_empty());
    }
    let points = models_at(&d, &ms, &1);
    assert_eq!(points.len(), ms.iter().map(|m| m.size).sum::<usize>());
}
