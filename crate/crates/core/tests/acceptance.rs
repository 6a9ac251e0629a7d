//! Acceptance suite. Every criterion runs at its stated time limit and
//! prints one PASS or FAIL line; the process exits non-zero if any fails.
//!
//! `cargo test -p doctrine-core --test acceptance` runs all of them; a bare
//! number after `--` runs only that criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use doctrine_core::doctrine::{
    add_constant, subsets_quantifier, ConstAdjoined, Doctrine, PointSet, Quantifier, Shape, StructureDoctrine,
    SubsetsDoctrine, SyntacticDoctrine, Tri,
};
use doctrine_core::filters::{
    check_family_axioms, check_pair_axioms, check_sampled, check_witness, extend_to_ultrafilter, intersection,
    ultrafilters_of, universal_filters, universal_ideals, witness_search, FamilyKind, MixedSequent, Scope, SearchBounds,
    SearchLog, Witness,
};
use doctrine_core::free1::{
    forall_embed, forall_gen, free1_leq, free1_reindex, refute_at, reindex_sequent, transport_witness, ClauseStatus, Elem,
    Free1Element, Free1Options, Free1Verdict,
};
use doctrine_core::models::{all_tuples, elementary_quotient, structure, CoverModel, PropModel};
use doctrine_core::{parse_free1, QFFormula, Signature};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: doctrine_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Criterion {
    id: usize,
    title: &'static str,
    limit_secs: Option<f64>,
    run: fn() -> Check,
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "minimal two-instance witness", limit_secs: Some(1.0), run: minimal_witness },
    Criterion { id: 2, title: "zero-instance witness", limit_secs: Some(0.1), run: zero_instances },
    Criterion { id: 3, title: "empty-model sensitivity", limit_secs: None, run: empty_model },
    Criterion { id: 4, title: "existential Herbrand restriction", limit_secs: None, run: existential_herbrand },
    Criterion { id: 5, title: "models give ultrafilters", limit_secs: Some(60.0), run: models_give_ultrafilters },
    Criterion { id: 6, title: "finite filters, ideals, ultrafilters", limit_secs: Some(120.0), run: finite_tables },
    Criterion { id: 7, title: "never both witness and countermodel", limit_secs: Some(600.0), run: never_both },
    Criterion { id: 8, title: "free one-step laws", limit_secs: None, run: free1_laws },
    Criterion { id: 9, title: "subsets quantifier laws", limit_secs: Some(30.0), run: subsets_laws },
    Criterion { id: 10, title: "elementary quotient", limit_secs: None, run: quotient },
];

fn main() {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = Vec::new();
    for c in CRITERIA.iter().filter(|c| only.is_none_or(|k| k == c.id)) {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        let result = match (result, c.limit_secs) {
            (Ok(_), Some(limit)) if secs > limit => Err(format!("took {secs:.2}s, limit {limit}s")),
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(m) => ("PASS", m.as_str()),
            Err(m) => ("FAIL", m.as_str()),
        };
        println!("{tag} {:>2} {:<38} {:>8.3}s  {detail}", c.id, c.title, secs);
        if result.is_err() {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

fn show_terms<M: std::fmt::Display>(ms: &[M]) -> String {
    ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
}

fn minimal_witness() -> Check {
    let d = fix_ab();
    let ds = add_constant(&d, 0);
    let seq = MixedSequent::universal(vec![(1, f("!R(x0)"))], vec![]);
    let mut log = SearchLog::default();
    let out = ok(witness_search(&ds, &seq, SearchBounds { depth: 1, max_n: 4 }, Some(&mut log)))?;
    let Some(w) = out.witness() else { return Err(format!("no witness: {out:?}")) };
    ensure!(w.n == 2 && show_terms(&w.morphisms) == "(a),(b)", "witness {w}");
    ensure!(ok(check_witness(&ds, &seq, w))?, "the witness does not re-check");
    let small: Vec<_> = log.entries.iter().filter(|e| e.picks.len() <= 1).collect();
    let tried: Vec<String> = small.iter().map(|e| format!("[{}]", e.terms.join(","))).collect();
    ensure!(tried == ["[]", "[(a)]", "[(b)]"], "candidates with n <= 1: {tried:?}");
    for e in &small {
        ensure!(!e.certified && e.refutation.is_some(), "candidate {:?} not refuted", e.terms);
    }
    let last = log.entries.last().unwrap();
    ensure!(last.certified && last.terms == ["(a)", "(b)"], "last log entry {last:?}");
    let one = Witness::universal(vec![1], vec![w.morphisms[0].clone()]);
    ensure!(!ok(check_witness(&ds, &seq, &one))?, "the one-instance witness was accepted");
    let why: Vec<String> = small.iter().map(|e| format!("[{}]: {}", e.terms.join(","), e.refutation.as_deref().unwrap())).collect();
    Ok(format!("{w}; refuted {}", why.join("; ")))
}

fn zero_instances() -> Check {
    let mut out = Vec::new();
    for (theory, alpha) in [("", "true"), ("pred A/1", "A(x0)"), ("pred A/1", "!A(x0)")] {
        let d = doctrine(theory, 2, 2);
        let ds = add_constant(&d, 0);
        let seq = MixedSequent::universal(vec![(1, f(alpha))], vec![(0, QFFormula::Top)]);
        let found = ok(witness_search(&ds, &seq, SearchBounds::default(), None))?;
        let Some(w) = found.witness() else { return Err(format!("forall x {alpha} |- true: {found:?}")) };
        ensure!(w.n == 0 && w.n_prime == 0, "witness {w} for {alpha}");
        ensure!(ok(check_witness(&ds, &seq, w))?, "witness for {alpha} does not re-check");
        out.push(format!("{alpha}: n=0"));
    }
    Ok(out.join(", "))
}

fn certified<'a>(d: &'a SyntacticDoctrine, s: usize, v: &Free1Verdict<'a, SyntacticDoctrine>) -> Result<(), String> {
    let ds = add_constant(d, s);
    for c in &v.clauses {
        if let ClauseStatus::Proved(w) = &c.status {
            ensure!(ok(check_witness(&ds, &c.sequent, w))?, "witness {w} for {} fails", c.sequent);
        }
    }
    Ok(())
}

fn empty_model() -> Check {
    let lhs = "!(forall y1. !A(y1)) | (forall. B)";
    let rhs = "!(forall y1. !(A(y1) | B))";
    let mut notes = Vec::new();
    for (theory, with_const) in [("pred A/1\npred B/0", false), ("const c\npred A/1\npred B/0", true)] {
        let d = doctrine(theory, 2, 2);
        let ms = d.models();
        let sig = &d.theory.signature;
        let (e1, e2) = (ok(parse_free1(lhs, 0, sig))?, ok(parse_free1(rhs, 0, sig))?);
        let v = ok(free1_leq(&d, &0, &e1, &e2, Free1Options::default(), &ms))?;
        certified(&d, 0, &v)?;
        if with_const {
            ensure!(v.status == Tri::True, "with a constant: {:?}", v.status);
        } else {
            ensure!(v.status == Tri::False, "without constants: {:?}", v.status);
            let r = v
                .clauses
                .iter()
                .find_map(|c| if let ClauseStatus::Refuted(r) = &c.status { Some(r.clone()) } else { None })
                .ok_or("no refuted clause")?;
            let m = &ms[r.model];
            ensure!(m.size == 0 && m.holds(&f("B"), &[]), "countermodel {}", m.to_json());
            notes.push(format!("refuted by {}", m.to_json()));
        }
        let back = ok(free1_leq(&d, &0, &e2, &e1, Free1Options::default(), &ms))?;
        certified(&d, 0, &back)?;
        ensure!(back.status == Tri::True, "converse with const={with_const}: {:?}", back.status);
    }
    notes.push("proved with c; converse proved in both signatures".into());
    Ok(notes.join("; "))
}

fn existential_herbrand() -> Check {
    let d = fix_ab();
    let ds = add_constant(&d, 0);
    let seq = MixedSequent::<ConstAdjoined<'_, SyntacticDoctrine>> { exists_concl: vec![(1, f("R(x0)"))], ..Default::default() };
    let found = ok(witness_search(&ds, &seq, SearchBounds::default(), None))?;
    let Some(w) = found.witness() else { return Err(format!("{found:?}")) };
    let terms: BTreeSet<String> = w.morphisms_ex.iter().map(|m| m.to_string()).collect();
    ensure!(w.n == 0 && w.n_prime == 2, "witness {w}");
    ensure!(terms == BTreeSet::from(["(a)".to_string(), "(b)".to_string()]), "instances {terms:?}");
    ensure!(ok(check_witness(&ds, &seq, w))?, "witness does not re-check");
    Ok(format!("{w}"))
}

fn models_give_ultrafilters() -> Check {
    let (mut models, mut instances) = (0, 0);
    for d in [fix_ab(), fix_empty()] {
        let samples = |n: &usize| sample_formulas(&d, *n);
        let scope = Scope { objects: vec![0, 1, 2], samples: &samples, depth: 1, max_conj: 2 };
        for m in d.models().iter() {
            let mem = |x: &usize, a: &QFFormula| m.validates(&d, x, a);
            let r = ok(check_sampled(&d, FamilyKind::Ultrafilter, &scope, &mem))?;
            ensure!(r.passed(), "model {}: {}", m.to_json(), r.first_failure());
            ensure!(r.checked() >= 200, "only {} instances for {}", r.checked(), m.to_json());
            models += 1;
            instances += r.checked();
        }
    }
    Ok(format!("{models} models, {instances} instances, 0 failures"))
}

fn finite_tables() -> Check {
    let mut stats = Vec::new();
    for (k, d) in fix_sl().iter().enumerate() {
        let ufs = ok(ultrafilters_of(d))?;
        ensure!(!ufs.is_empty(), "doctrine {k} has no ultrafilter");
        let mut uis = Vec::new();
        for u in &ufs {
            let c = u.complement(d);
            let r = ok(check_family_axioms(d, FamilyKind::Ultraideal, &c))?;
            ensure!(r.passed(), "doctrine {k}: complement not an ultraideal: {}", r.first_failure());
            let p = ok(check_pair_axioms(d, u, &c))?;
            ensure!(p.passed(), "doctrine {k}: (U, U^c) not a pair: {}", p.first_failure());
            uis.push(c);
        }
        let filters = ok(universal_filters(d))?;
        for fl in &filters {
            let above: Vec<_> = ufs.iter().filter(|u| fl.is_subset(u)).cloned().collect();
            ensure!(intersection(d, &above) == *fl, "doctrine {k}: filter {} is not an intersection", fl.to_json(d));
        }
        let ideals = ok(universal_ideals(d))?;
        for il in &ideals {
            let above: Vec<_> = uis.iter().filter(|u| il.is_subset(u)).cloned().collect();
            ensure!(intersection(d, &above) == *il, "doctrine {k}: ideal {} is not an intersection", il.to_json(d));
        }
        let mut pairs = 0;
        for fl in &filters {
            for il in ideals.iter().filter(|il| fl.is_disjoint(il)) {
                let g = ok(extend_to_ultrafilter(d, fl, il))?;
                ensure!(fl.is_subset(&g) && g.is_disjoint(il) && ufs.contains(&g), "doctrine {k}: bad extension");
                pairs += 1;
            }
        }
        stats.push(format!("#{k}: {} uf, {} filters, {} ideals, {pairs} pairs", ufs.len(), filters.len(), ideals.len()));
    }
    Ok(stats.join("; "))
}

const CORPUS_SEED: u64 = 0x5eed_0007;

fn random_sequent<'a>(
    rng: &mut ChaCha8Rng,
    d: &SyntacticDoctrine,
    s: usize,
) -> MixedSequent<ConstAdjoined<'a, SyntacticDoctrine>> {
    let items = |lo: usize, hi: usize, rng: &mut ChaCha8Rng| -> Vec<(usize, QFFormula)> {
        (0..rng.gen_range(lo..=hi))
            .map(|_| {
                let k = rng.gen_range(0..=1);
                (k, random_formula(rng, d, s + k, 2))
            })
            .collect()
    };
    MixedSequent {
        forall_prem: items(0, 2, rng),
        exists_prem: items(0, 1, rng),
        forall_concl: items(0, 1, rng),
        exists_concl: items(0, 1, rng),
    }
}

fn never_both() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let (mut proved, mut refuted, mut open) = (0, 0, 0);
    let bounds = SearchBounds { depth: 2, max_n: 4 };
    for _ in 0..25 {
        let text = random_theory(&mut rng);
        let d = doctrine(&text, 2, 3);
        let ms = d.models();
        for _ in 0..20 {
            let s = rng.gen_range(0..=1);
            let ds = add_constant(&d, s);
            let seq = random_sequent(&mut rng, &d, s);
            let found = ok(witness_search(&ds, &seq, bounds, None))?;
            let cm = refute_at(&d, &s, &ms, &seq);
            match (found.witness(), cm) {
                (Some(w), Some(r)) => return Err(format!("{seq} over\n{text}has witness {w} and countermodel {r:?}")),
                (Some(w), None) => {
                    ensure!(ok(check_witness(&ds, &seq, w))?, "witness {w} for {seq} fails");
                    proved += 1;
                }
                (None, Some(_)) => refuted += 1,
                (None, None) => open += 1,
            }
        }
    }
    Ok(format!("seed {CORPUS_SEED:#x}: {proved} proved, {refuted} refuted, {open} open"))
}

type SynElem = Elem<SyntacticDoctrine>;

fn leq<'a>(d: &'a SyntacticDoctrine, s: usize, a: &SynElem, b: &SynElem) -> Result<Free1Verdict<'a, SyntacticDoctrine>, String> {
    let ms = d.models();
    let v = ok(free1_leq(d, &s, a, b, Free1Options::default(), &ms))?;
    certified(d, s, &v)?;
    Ok(v)
}

fn free1_pool(d: &SyntacticDoctrine, s: usize) -> Result<Vec<SynElem>, String> {
    let body = sample_formulas(d, s + 1);
    let flat = sample_formulas(d, s);
    let mut gens = Vec::new();
    for a in body.iter().skip(2).take(4) {
        gens.push(ok(forall_gen(d, &s, &1, a.clone()))?);
    }
    for a in flat.iter().rev().take(2) {
        gens.push(ok(forall_embed(d, &s, a))?);
    }
    let mut pool = gens.clone();
    pool.push(Free1Element::not(gens[0].clone()));
    pool.push(Free1Element::or(gens[0].clone(), gens[1].clone()));
    pool.push(Free1Element::and(gens[2].clone(), Free1Element::not(gens[4].clone())));
    pool.push(Free1Element::or(Free1Element::not(gens[1].clone()), gens[5].clone()));
    Ok(pool)
}

fn free1_laws() -> Check {
    let (mut embed, mut refl, mut trans, mut mono, mut dist) = (0, 0, 0, 0, 0);
    for d in [fix_ab(), fix_empty()] {
        for s in [0usize, 1] {
            let flat = sample_formulas(&d, s);
            for a in flat.iter().take(10) {
                for b in flat.iter().take(10) {
                    let base = d.leq(&s, a, b);
                    if base == Tri::Unknown {
                        continue;
                    }
                    let v = leq(&d, s, &ok(forall_embed(&d, &s, a))?, &ok(forall_embed(&d, &s, b))?)?;
                    ensure!(v.status == base, "embedding at {s}: {a} <= {b} is {base:?} below, {:?} above", v.status);
                    embed += 1;
                }
            }
            let pool = free1_pool(&d, s)?;
            let mut table = vec![vec![Tri::Unknown; pool.len()]; pool.len()];
            for (i, e1) in pool.iter().enumerate() {
                for (j, e2) in pool.iter().enumerate() {
                    let v = leq(&d, s, e1, e2)?;
                    table[i][j] = v.status;
                    if i == j {
                        ensure!(v.status == Tri::True, "reflexivity fails for {e1}: {:?}", v.status);
                        refl += 1;
                    }
                    if v.status == Tri::True {
                        for t in 0..=s {
                            for f in d.morphisms(&t, &s, 0) {
                                let (r1, r2) = (ok(free1_reindex(&d, &f, e1))?, ok(free1_reindex(&d, &f, e2))?);
                                let w = leq(&d, t, &r1, &r2)?;
                                ensure!(w.status == Tri::True, "reindexing {e1} <= {e2} along {f}: {:?}", w.status);
                                let dt = add_constant(&d, t);
                                for c in &v.clauses {
                                    let ClauseStatus::Proved(wit) = &c.status else { continue };
                                    let seq = ok(reindex_sequent(&d, &f, &c.sequent))?;
                                    let moved = ok(transport_witness(&d, &f, wit))?;
                                    ensure!(ok(check_witness(&dt, &seq, &moved))?, "transported {moved} fails for {seq}");
                                }
                                mono += 1;
                            }
                        }
                    }
                }
            }
            let n = pool.len();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let (a, b, c) = (table[i][j], table[j][k], table[i][k]);
                        if [a, b, c].contains(&Tri::Unknown) {
                            continue;
                        }
                        ensure!(!(a == Tri::True && b == Tri::True) || c == Tri::True, "transitivity at ({i},{j},{k})");
                        trans += 1;
                    }
                }
            }
            let body = sample_formulas(&d, s + 1);
            for a1 in body.iter().skip(2).take(4) {
                for a2 in body.iter().skip(2).take(4) {
                    let lhs = Free1Element::or(ok(forall_gen(&d, &s, &1, a1.clone()))?, ok(forall_gen(&d, &s, &1, a2.clone()))?);
                    let m1 = doctrine_core::CtxMor::new(s + 2, (0..s + 1).map(doctrine_core::Term::Var).collect()).unwrap();
                    let mut c2: Vec<_> = (0..s).map(doctrine_core::Term::Var).collect();
                    c2.push(doctrine_core::Term::Var(s + 1));
                    let m2 = doctrine_core::CtxMor::new(s + 2, c2).unwrap();
                    let joined = d.join(&ok(d.reindex(&m1, a1))?, &ok(d.reindex(&m2, a2))?);
                    let rhs = ok(forall_gen(&d, &s, &2, joined))?;
                    let there = leq(&d, s, &lhs, &rhs)?;
                    let back = leq(&d, s, &rhs, &lhs)?;
                    ensure!(there.status == Tri::True && back.status == Tri::True, "distribution for {a1}, {a2}: {:?} / {:?}", there.status, back.status);
                    dist += 1;
                }
            }
        }
    }
    Ok(format!("embedding {embed}, reflexive {refl}, transitive {trans}, reindexed {mono}, distribution {dist}"))
}

fn subsets_sample(rng: &mut ChaCha8Rng, x: &Shape, count: usize) -> Vec<PointSet> {
    let pts = x.points();
    if pts.len() <= 7 {
        return (0u64..1 << pts.len())
            .map(|m| PointSet::from_tuples((0..pts.len()).filter(|k| m >> k & 1 == 1).map(|k| pts[k].clone())))
            .collect();
    }
    (0..count).map(|_| PointSet::from_tuples(pts.iter().filter(|_| rng.gen_bool(0.5)).cloned())).collect()
}

fn subsets_laws() -> Check {
    let d = SubsetsDoctrine;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut checked, mut sizes) = (0usize, 0usize);
    let forall = |x: &Shape, y: &Shape, b: &PointSet| subsets_quantifier(Quantifier::Forall, x, y, b);
    let exists = |x: &Shape, y: &Shape, b: &PointSet| subsets_quantifier(Quantifier::Exists, x, y, b);
    for nx in 0..=3 {
        for ny in 0..=3 {
            let (x, y) = (Shape::set(nx), Shape::set(ny));
            let xy = d.product(&x, &y);
            let p1 = d.pr1(&x, &y);
            let betas = subsets_sample(&mut rng, &xy, 128);
            let alphas = subsets_sample(&mut rng, &x, 128);
            sizes += 1;
            for b in &betas {
                let fb = forall(&x, &y, b);
                let eb = exists(&x, &y, b);
                for a in &alphas {
                    let pa = ok(d.reindex(&p1, a))?;
                    ensure!(pa.is_subset(b) == a.is_subset(&fb), "forall adjunction at {x}, {y}");
                    ensure!(eb.is_subset(a) == b.is_subset(&pa), "exists adjunction at {x}, {y}");
                    for g in alphas.iter().take(8) {
                        let pg = ok(d.reindex(&p1, g))?;
                        ensure!(
                            a.is_subset(&d.join(g, &fb)) == pa.is_subset(&d.join(&pg, b)),
                            "join with a universal at {x}, {y}"
                        );
                        checked += 1;
                    }
                    checked += 2;
                }
            }
            let p2 = d.pr2(&x, &y);
            for a in subsets_sample(&mut rng, &y, 128) {
                let lhs = forall(&x, &y, &ok(d.reindex(&p2, &a))?);
                for fm in d.morphisms(&x, &y, 0) {
                    ensure!(lhs.is_subset(&ok(d.reindex(&fm, &a))?), "universal below substitution along {fm}");
                    checked += 1;
                }
            }
            let t = d.terminal();
            let (x1, x2) = (x.clone(), y.clone());
            let (q1, q2) = (d.pr1(&x1, &x2), d.pr2(&x1, &x2));
            for a1 in subsets_sample(&mut rng, &x1, 128) {
                for a2 in subsets_sample(&mut rng, &x2, 128) {
                    let lhs = d.join(&forall(&t, &x1, &a1), &forall(&t, &x2, &a2));
                    let inner = d.join(&ok(d.reindex(&q1, &a1))?, &ok(d.reindex(&q2, &a2))?);
                    ensure!(lhs == forall(&t, &xy, &inner), "distribution over disjoint variables at {x1}, {x2}");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{sizes} size pairs, {checked} instances"))
}

fn diagonal(size: usize, n: usize) -> PointSet {
    PointSet::from_tuples(all_tuples(size, n).into_iter().map(|p| p.iter().chain(&p).copied().collect()))
}

fn quotient() -> Check {
    let fixtures = [
        (
            Signature::new().with_constant("c").unwrap(),
            structure(2, &[("c", 0, vec![0])], &[]),
            structure(3, &[("c", 0, vec![1])], &[]),
            vec![0, 0, 1],
        ),
        (
            Signature::new().with_function("f", 1).unwrap(),
            structure(2, &[("f", 1, vec![1, 0])], &[]),
            structure(4, &[("f", 1, vec![1, 2, 3, 0])], &[]),
            vec![0, 1, 0, 1],
        ),
    ];
    let mut fibers = 0;
    for (sig, a, b, map) in fixtures {
        let size = a.size;
        let d = ok(StructureDoctrine::new(sig, a))?;
        let n = ok(CoverModel::new(&d, b, map))?;
        let delta = move |k: &usize| diagonal(size, *k);
        let nd = n.interp(&d, &2, &delta(&1));
        ensure!(nd != diagonal(n.cover.size, 1), "the cover's equality is already diagonal");
        let mut mors = d.morphisms(&1, &1, 1);
        mors.extend(d.morphisms(&0, &1, 1));
        let objects = [0, 1, 2];
        let q = ok(elementary_quotient(&d, &n, &delta, &objects, &mors, &|x| d.elements(x).unwrap()))?;
        for x in objects {
            let mx = q.carrier(&d, &x);
            let diag = PointSet::from_tuples(mx.iter().map(|u| u.iter().chain(u).copied().collect()));
            ensure!(q.interp(&d, &(2 * x), &delta(&x)) == diag, "delta at {x} is not the diagonal");
            for alpha in d.elements(&x).unwrap() {
                ensure!(q.validates(&d, &x, &alpha) == n.validates(&d, &x, &alpha), "F differs at {x} on {alpha}");
            }
            fibers += 1;
        }
    }
    Ok(format!("2 covers, {fibers} fibers equal"))
}
