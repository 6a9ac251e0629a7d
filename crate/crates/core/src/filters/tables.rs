//! Exact families over a [`FiniteDoctrine`], one bitmask of fiber elements
//! per object.
//!
//! Hom-sets of a semilattice have at most one morphism, so the conjunctions
//! `⋀_{j≤m} P(f_j)(α)` quantified over in the ideal axioms reduce to `m = 0`
//! (the top element) and `m = 1`.

use itertools::Itertools;
use serde_json::{json, Value};

use super::{AxiomReport, ClauseReport, FamilyKind};
use crate::doctrine::{AtomSet, Doctrine, FiniteDoctrine};
use crate::error::{Error, Result};

/// Largest fiber handled by tables: 6 atoms, 64 elements.
pub const TABLE_ATOMS: usize = 6;

/// Largest number of candidate families [`ultrafilters_of`] and its siblings
/// will enumerate.
pub const ENUM_LIMIT: u128 = 1_000_000;

/// A family `(F_x)_x`; bit `v` of `sets[x]` says whether `AtomSet(v) ∈ F_x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFamily {
    pub sets: Vec<u64>,
}

fn check_size(d: &FiniteDoctrine) -> Result<()> {
    match d.atoms.iter().position(|a| a.len() > TABLE_ATOMS) {
        Some(x) => Err(Error::TooLarge(format!(
            "fiber at {} has {} atoms; families need at most {TABLE_ATOMS}",
            d.base.names[x],
            d.atoms[x].len()
        ))),
        None => Ok(()),
    }
}

/// The mask of all elements of the fiber at `x`.
fn all_elems(d: &FiniteDoctrine, x: usize) -> u64 {
    let k = 1usize << d.atoms[x].len();
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn bit(a: AtomSet) -> u64 {
    1u64 << a.0
}

fn elems(d: &FiniteDoctrine, x: usize) -> impl Iterator<Item = AtomSet> {
    (0..=d.full(x)).map(AtomSet)
}

fn show(d: &FiniteDoctrine, x: usize, a: AtomSet) -> String {
    format!("{{{}}}@{}", d.elem_names(x, a).join(","), d.base.names[x])
}

fn reindex(d: &FiniteDoctrine, x: usize, y: usize, a: AtomSet) -> AtomSet {
    d.reindex(&d.base.hom(x, y).expect("x <= y"), &a).expect("element of the fiber")
}

/// `P(pr₁)(a1) ∨ P(pr₂)(a2)` at `x1 × x2`.
fn split_join(d: &FiniteDoctrine, x1: usize, a1: AtomSet, x2: usize, a2: AtomSet) -> (usize, AtomSet) {
    let p = d.base.product(x1, x2);
    (p, AtomSet(reindex(d, p, x1, a1).0 | reindex(d, p, x2, a2).0))
}

impl FiniteFamily {
    pub fn empty(d: &FiniteDoctrine) -> Self {
        FiniteFamily { sets: vec![0; d.base.len()] }
    }

    pub fn from_fn(d: &FiniteDoctrine, mut f: impl FnMut(usize, AtomSet) -> bool) -> Result<Self> {
        check_size(d)?;
        let sets = (0..d.base.len()).map(|x| elems(d, x).filter(|&a| f(x, a)).fold(0, |m, a| m | bit(a))).collect();
        Ok(FiniteFamily { sets })
    }

    /// `({⊤_x})_x`.
    pub fn tops(d: &FiniteDoctrine) -> Result<Self> {
        Self::from_fn(d, |x, a| a.0 == d.full(x))
    }

    /// `({⊥_x})_x`.
    pub fn bottoms(d: &FiniteDoctrine) -> Result<Self> {
        Self::from_fn(d, |_, a| a.0 == 0)
    }

    pub fn contains(&self, x: usize, a: AtomSet) -> bool {
        self.sets[x] & bit(a) != 0
    }

    pub fn insert(&mut self, x: usize, a: AtomSet) {
        self.sets[x] |= bit(a);
    }

    pub fn members(&self, d: &FiniteDoctrine, x: usize) -> Vec<AtomSet> {
        elems(d, x).filter(|&a| self.contains(x, a)).collect()
    }

    pub fn complement(&self, d: &FiniteDoctrine) -> Self {
        FiniteFamily { sets: self.sets.iter().enumerate().map(|(x, s)| all_elems(d, x) & !s).collect() }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.sets.iter().zip(&other.sets).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.sets.iter().zip(&other.sets).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        FiniteFamily { sets: self.sets.iter().zip(&other.sets).map(|(a, b)| a | b).collect() }
    }

    /// `{"x": [["p","q"], ...], ...}` with elements as atom-name lists.
    pub fn to_json(&self, d: &FiniteDoctrine) -> Value {
        let m: serde_json::Map<String, Value> = (0..d.base.len())
            .map(|x| {
                let items: Vec<Value> = self.members(d, x).into_iter().map(|a| json!(d.elem_names(x, a))).collect();
                (d.base.names[x].clone(), Value::Array(items))
            })
            .collect();
        Value::Object(m)
    }

    /// Reads the format written by [`FiniteFamily::to_json`]; missing objects
    /// get no elements.
    pub fn from_json(d: &FiniteDoctrine, v: &Value) -> Result<Self> {
        check_size(d)?;
        let bad = |m: String| Error::Invalid(format!("family JSON: {m}"));
        let obj = v.as_object().ok_or_else(|| bad("expected an object".into()))?;
        let mut fam = FiniteFamily::empty(d);
        for (name, list) in obj {
            let x = d.base.index(name)?;
            for e in list.as_array().ok_or_else(|| bad(format!("`{name}` is not a list")))? {
                let names: Vec<&str> = e
                    .as_array()
                    .ok_or_else(|| bad("elements are lists of atom names".into()))?
                    .iter()
                    .map(|s| s.as_str().ok_or_else(|| bad("atom names are strings".into())))
                    .collect::<Result<_>>()?;
                fam.insert(x, d.elem_named(x, &names)?);
            }
        }
        Ok(fam)
    }
}

struct Clause {
    name: String,
    checked: usize,
    counterexample: Option<String>,
}

impl Clause {
    fn new(name: impl Into<String>) -> Self {
        Clause { name: name.into(), checked: 0, counterexample: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
    }

    fn done(self) -> ClauseReport {
        ClauseReport { passed: self.counterexample.is_none(), name: self.name, checked: self.checked, counterexample: self.counterexample }
    }
}

fn objects(d: &FiniteDoctrine) -> std::ops::Range<usize> {
    0..d.base.len()
}

fn reindex_clause(d: &FiniteDoctrine, f: &FiniteFamily) -> ClauseReport {
    let mut c = Clause::new("reindex");
    for x in objects(d) {
        for y in objects(d).filter(|&y| d.base.leq(x, y)) {
            for a in f.members(d, y) {
                let b = reindex(d, x, y, a);
                c.check(f.contains(x, b), || format!("{} along {}<={} gives {}", show(d, y, a), d.base.names[x], d.base.names[y], show(d, x, b)));
            }
        }
    }
    c.done()
}

fn filter_clause(d: &FiniteDoctrine, name: &str, f: &FiniteFamily, complement: bool) -> ClauseReport {
    let mut c = Clause::new(name);
    let fam = if complement { f.complement(d) } else { f.clone() };
    for x in objects(d) {
        let top = AtomSet(d.full(x));
        c.check(fam.contains(x, top), || format!("{} is missing", show(d, x, top)));
        for a in fam.members(d, x) {
            for b in elems(d, x) {
                if a.0 & !b.0 == 0 {
                    c.check(fam.contains(x, b), || format!("{} is above {} but missing", show(d, x, b), show(d, x, a)));
                }
                if fam.contains(x, b) {
                    let m = AtomSet(a.0 & b.0);
                    c.check(fam.contains(x, m), || format!("the meet of {} and {} is missing", show(d, x, a), show(d, x, b)));
                }
            }
        }
    }
    c.done()
}

/// `P(pr₁)(α₁) ∨ P(pr₂)(α₂) ∈ F` implies `α₁ ∈ F` or `α₂ ∈ F`.
fn prime_clause(d: &FiniteDoctrine, f: &FiniteFamily) -> ClauseReport {
    let mut c = Clause::new("prime");
    for x1 in objects(d) {
        for x2 in objects(d) {
            for a1 in elems(d, x1) {
                for a2 in elems(d, x2) {
                    let (p, j) = split_join(d, x1, a1, x2, a2);
                    if f.contains(p, j) {
                        c.check(f.contains(x1, a1) || f.contains(x2, a2), || {
                            format!("{} is in but neither {} nor {} is", show(d, p, j), show(d, x1, a1), show(d, x2, a2))
                        });
                    }
                }
            }
        }
    }
    c.done()
}

/// `α₁, α₂ ∈ I` implies `P(pr₁)(α₁) ∨ P(pr₂)(α₂) ∈ I`.
fn join_clause(d: &FiniteDoctrine, i: &FiniteFamily) -> ClauseReport {
    let mut c = Clause::new("join");
    for x1 in objects(d) {
        for x2 in objects(d) {
            for a1 in i.members(d, x1) {
                for a2 in i.members(d, x2) {
                    let (p, j) = split_join(d, x1, a1, x2, a2);
                    c.check(i.contains(p, j), || format!("{} and {} are in but {} is not", show(d, x1, a1), show(d, x2, a2), show(d, p, j)));
                }
            }
        }
    }
    c.done()
}

fn bottom_clause(d: &FiniteDoctrine, fam: &FiniteFamily, wanted: bool) -> ClauseReport {
    let mut c = Clause::new("bottom");
    let t = d.base.top;
    c.check(fam.contains(t, AtomSet(0)) == wanted, || {
        format!("bottom at {} is {}", d.base.names[t], if wanted { "missing" } else { "present" })
    });
    c.done()
}

/// `⋀_{j≤m} P(f_j)(α) ∈ I_x` implies `α ∈ I_y`, for `m = 0` and `m = 1`
/// (and `m = 1` only when `reflect_only`).
fn conjunction_clause(d: &FiniteDoctrine, name: &str, i: &FiniteFamily, reflect_only: bool) -> ClauseReport {
    let mut c = Clause::new(name);
    for x in objects(d) {
        for y in objects(d) {
            for a in elems(d, y) {
                if !reflect_only && i.contains(x, AtomSet(d.full(x))) {
                    c.check(i.contains(y, a), || {
                        format!("the empty meet {} is in but {} is not", show(d, x, AtomSet(d.full(x))), show(d, y, a))
                    });
                }
                if d.base.leq(x, y) {
                    let b = reindex(d, x, y, a);
                    if i.contains(x, b) {
                        c.check(i.contains(y, a), || format!("{} is in but {} is not", show(d, x, b), show(d, y, a)));
                    }
                }
            }
        }
    }
    c.done()
}

fn downward_clause(d: &FiniteDoctrine, i: &FiniteFamily) -> ClauseReport {
    let mut c = Clause::new("downward");
    for x in objects(d) {
        for a in i.members(d, x) {
            for b in elems(d, x).filter(|b| b.0 & !a.0 == 0) {
                c.check(i.contains(x, b), || format!("{} is below {} but missing", show(d, x, b), show(d, x, a)));
            }
        }
    }
    c.done()
}

fn connecting_clauses(d: &FiniteDoctrine, f: &FiniteFamily, i: &FiniteFamily) -> Vec<ClauseReport> {
    let mut one = Clause::new("connecting-1");
    let mut two = Clause::new("connecting-2");
    for y in objects(d) {
        for a in elems(d, y) {
            for x in objects(d) {
                for beta in f.members(d, x) {
                    let mut conj = vec![AtomSet(d.full(x))];
                    if d.base.leq(x, y) {
                        conj.push(reindex(d, x, y, a));
                    }
                    for e in conj {
                        let m = AtomSet(beta.0 & e.0);
                        if i.contains(x, m) {
                            one.check(i.contains(y, a), || format!("{} is in I but {} is not", show(d, x, m), show(d, y, a)));
                        }
                    }
                }
            }
            for z in objects(d) {
                for g in i.members(d, z) {
                    let (p, j) = split_join(d, y, a, z, g);
                    if f.contains(p, j) {
                        two.check(f.contains(y, a), || format!("{} is in F but {} is not", show(d, p, j), show(d, y, a)));
                    }
                }
            }
        }
    }
    vec![one.done(), two.done()]
}

/// Evaluates every clause of the named definition exhaustively.
pub fn check_family_axioms(d: &FiniteDoctrine, kind: FamilyKind, fam: &FiniteFamily) -> Result<AxiomReport> {
    check_size(d)?;
    if fam.sets.len() != d.base.len() {
        return Err(Error::Mismatch("one set per object is required".into()));
    }
    let clauses = match kind {
        FamilyKind::Filter => vec![reindex_clause(d, fam), filter_clause(d, "filter", fam, false)],
        FamilyKind::Ultrafilter => vec![
            reindex_clause(d, fam),
            filter_clause(d, "filter", fam, false),
            prime_clause(d, fam),
            bottom_clause(d, fam, false),
        ],
        FamilyKind::Ideal => vec![
            conjunction_clause(d, "conjunction", fam, false),
            downward_clause(d, fam),
            join_clause(d, fam),
            bottom_clause(d, fam, true),
        ],
        FamilyKind::Ultraideal => vec![
            conjunction_clause(d, "reflect", fam, true),
            filter_clause(d, "complement-filter", fam, true),
            join_clause(d, fam),
            bottom_clause(d, fam, true),
        ],
    };
    Ok(AxiomReport { kind: kind.name().into(), clauses })
}

/// Filter and ideal clauses, prefixed `F:` and `I:`, plus both connecting
/// conditions.
pub fn check_pair_axioms(d: &FiniteDoctrine, f: &FiniteFamily, i: &FiniteFamily) -> Result<AxiomReport> {
    let mut clauses = Vec::new();
    for (p, kind, fam) in [("F:", FamilyKind::Filter, f), ("I:", FamilyKind::Ideal, i)] {
        for mut c in check_family_axioms(d, kind, fam)?.clauses {
            c.name = format!("{p}{}", c.name);
            clauses.push(c);
        }
    }
    clauses.extend(connecting_clauses(d, f, i));
    Ok(AxiomReport { kind: "pair".into(), clauses })
}

/// The least universal filter containing `gens`.
pub fn filter_closure(d: &FiniteDoctrine, gens: &FiniteFamily) -> FiniteFamily {
    let mut f = gens.clone();
    loop {
        let before = f.clone();
        for x in objects(d) {
            let m = f.members(d, x).into_iter().fold(d.full(x), |acc, a| acc & a.0);
            f.sets[x] = elems(d, x).filter(|b| m & !b.0 == 0).fold(0, |s, b| s | bit(b));
        }
        for x in objects(d) {
            for y in objects(d).filter(|&y| y != x && d.base.leq(x, y)) {
                for a in f.members(d, y) {
                    let b = reindex(d, x, y, a);
                    f.insert(x, b);
                }
            }
        }
        if f == before {
            return f;
        }
    }
}

/// The least universal ideal containing `gens`.
pub fn ideal_closure(d: &FiniteDoctrine, gens: &FiniteFamily) -> FiniteFamily {
    let mut i = gens.clone();
    i.insert(d.base.top, AtomSet(0));
    loop {
        let before = i.clone();
        if objects(d).any(|x| i.contains(x, AtomSet(d.full(x)))) {
            return FiniteFamily { sets: objects(d).map(|x| all_elems(d, x)).collect() };
        }
        for x in objects(d) {
            for a in i.members(d, x) {
                for b in elems(d, x).filter(|b| b.0 & !a.0 == 0) {
                    i.insert(x, b);
                }
            }
        }
        for x in objects(d) {
            for y in objects(d).filter(|&y| y != x && d.base.leq(x, y)) {
                for a in elems(d, y) {
                    if i.contains(x, reindex(d, x, y, a)) {
                        i.insert(y, a);
                    }
                }
            }
        }
        let snapshot = i.clone();
        for x1 in objects(d) {
            for x2 in objects(d) {
                for a1 in snapshot.members(d, x1) {
                    for a2 in snapshot.members(d, x2) {
                        let (p, j) = split_join(d, x1, a1, x2, a2);
                        i.insert(p, j);
                    }
                }
            }
        }
        if i == before {
            return i;
        }
    }
}

/// Whether the filter generated by `g` and `α ∈ P(y)` meets `j`: some
/// `β ∧ ⋀ P(f_i)(α) ∈ J_x` with `β ∈ G_x`.
fn extension_meets(d: &FiniteDoctrine, g: &FiniteFamily, j: &FiniteFamily, y: usize, a: AtomSet) -> bool {
    objects(d).any(|x| {
        let mut conj = vec![d.full(x)];
        if d.base.leq(x, y) {
            conj.push(reindex(d, x, y, a).0);
        }
        g.members(d, x).into_iter().any(|beta| conj.iter().any(|&e| j.contains(x, AtomSet(beta.0 & e))))
    })
}

/// Extends a universal filter to a universal ultrafilter disjoint from a
/// universal ideal, deciding each `(x, α)` in object and then element order.
pub fn extend_to_ultrafilter(d: &FiniteDoctrine, f: &FiniteFamily, i: &FiniteFamily) -> Result<FiniteFamily> {
    let fr = check_family_axioms(d, FamilyKind::Filter, f)?;
    if !fr.passed() {
        return Err(Error::Precondition(format!("not a universal filter: {}", fr.first_failure())));
    }
    let ir = check_family_axioms(d, FamilyKind::Ideal, i)?;
    if !ir.passed() {
        return Err(Error::Precondition(format!("not a universal ideal: {}", ir.first_failure())));
    }
    if let Some(x) = objects(d).find(|&x| f.sets[x] & i.sets[x] != 0) {
        return Err(Error::Precondition(format!("the filter and the ideal meet at {}", d.base.names[x])));
    }
    let (mut g, mut j) = (f.clone(), i.clone());
    for x in objects(d) {
        for a in elems(d, x) {
            if g.contains(x, a) || j.contains(x, a) {
                continue;
            }
            if extension_meets(d, &g, &j, x, a) {
                let mut next = j.clone();
                next.insert(x, a);
                j = ideal_closure(d, &next);
            } else {
                let mut next = g.clone();
                next.insert(x, a);
                g = filter_closure(d, &next);
            }
            if !g.is_disjoint(&j) {
                return Err(Error::Invalid(format!("extension at {} broke disjointness", show(d, x, a))));
            }
        }
    }
    Ok(g)
}

fn enumerate(d: &FiniteDoctrine, per_object: Vec<Vec<u64>>, keep: impl Fn(&FiniteFamily) -> bool) -> Result<Vec<FiniteFamily>> {
    let total: u128 = per_object.iter().map(|c| c.len() as u128).product();
    if total > ENUM_LIMIT {
        return Err(Error::TooLarge(format!("{total} candidate families (limit {ENUM_LIMIT})")));
    }
    if per_object.is_empty() {
        return Ok(vec![FiniteFamily::empty(d)].into_iter().filter(|f| keep(f)).collect());
    }
    Ok(per_object
        .into_iter()
        .multi_cartesian_product()
        .map(|sets| FiniteFamily { sets })
        .filter(|f| keep(f))
        .collect())
}

fn principal_filters(d: &FiniteDoctrine) -> Vec<Vec<u64>> {
    objects(d)
        .map(|x| elems(d, x).map(|a| elems(d, x).filter(|b| a.0 & !b.0 == 0).fold(0, |s, b| s | bit(b))).collect())
        .collect()
}

fn passes(d: &FiniteDoctrine, kind: FamilyKind, f: &FiniteFamily) -> bool {
    check_family_axioms(d, kind, f).map(|r| r.passed()).unwrap_or(false)
}

/// Every universal ultrafilter, in lexicographic order of their per-object
/// generators.
pub fn ultrafilters_of(d: &FiniteDoctrine) -> Result<Vec<FiniteFamily>> {
    check_size(d)?;
    enumerate(d, principal_filters(d), |f| passes(d, FamilyKind::Ultrafilter, f))
}

/// Every universal filter.
pub fn universal_filters(d: &FiniteDoctrine) -> Result<Vec<FiniteFamily>> {
    check_size(d)?;
    enumerate(d, principal_filters(d), |f| passes(d, FamilyKind::Filter, f))
}

/// Every universal ideal. Components are enumerated as down-sets, so the
/// guard applies to the product of their counts.
pub fn universal_ideals(d: &FiniteDoctrine) -> Result<Vec<FiniteFamily>> {
    check_size(d)?;
    let mut per_object = Vec::new();
    for x in objects(d) {
        let k = 1usize << d.atoms[x].len();
        if k > 16 {
            return Err(Error::TooLarge(format!("down-sets of a {k}-element fiber")));
        }
        let downsets: Vec<u64> = (0u64..1 << k)
            .filter(|&s| (0..k).all(|a| s & (1 << a) == 0 || (0..k).all(|b| b & !a != 0 || s & (1 << b) != 0)))
            .collect();
        per_object.push(downsets);
    }
    enumerate(d, per_object, |f| passes(d, FamilyKind::Ideal, f))
}

/// The componentwise intersection; the intersection of no families is the
/// full family.
pub fn intersection(d: &FiniteDoctrine, fams: &[FiniteFamily]) -> FiniteFamily {
    let mut out = FiniteFamily { sets: objects(d).map(|x| all_elems(d, x)).collect() };
    for f in fams {
        for (o, s) in out.sets.iter_mut().zip(&f.sets) {
            *o &= s;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::SemilatticeCategory;
    use crate::filters::{generated_membership, Closure, SearchBounds};
    use crate::doctrine::Tri;

    fn one_object(atoms: &[&str]) -> FiniteDoctrine {
        FiniteDoctrine::new(SemilatticeCategory::chain(&["t"]), vec![atoms.iter().map(|s| s.to_string()).collect()], |_, _| None)
            .unwrap()
    }

    /// t > b, with a two-atom fiber at b mapped onto the single atom at t.
    fn two_level() -> FiniteDoctrine {
        let atoms = vec![vec!["u".to_string()], vec!["v".to_string(), "w".to_string()]];
        FiniteDoctrine::new(SemilatticeCategory::chain(&["t", "b"]), atoms, |_, _| Some(vec![0, 0])).unwrap()
    }

    #[test]
    fn tops_form_a_filter() {
        for d in [one_object(&["p", "q"]), two_level()] {
            let r = check_family_axioms(&d, FamilyKind::Filter, &FiniteFamily::tops(&d).unwrap()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn whole_fiber_is_not_an_ultrafilter() {
        let d = one_object(&["p"]);
        let all = FiniteFamily::from_fn(&d, |_, _| true).unwrap();
        let r = check_family_axioms(&d, FamilyKind::Ultrafilter, &all).unwrap();
        assert!(!r.clause("bottom").unwrap().passed);
        assert!(r.clause("filter").unwrap().passed);
    }

    /// Oracle: the ultrafilters of a 4-element Boolean algebra are the two
    /// principal filters at its atoms.
    #[test]
    fn four_element_algebra_has_two_ultrafilters() {
        let d = one_object(&["p", "q"]);
        let ufs = ultrafilters_of(&d).unwrap();
        let gens: Vec<Vec<AtomSet>> = ufs.iter().map(|u| u.members(&d, 0)).collect();
        assert_eq!(gens, vec![vec![AtomSet(1), AtomSet(3)], vec![AtomSet(2), AtomSet(3)]]);
        for u in &ufs {
            assert!(check_family_axioms(&d, FamilyKind::Ultraideal, &u.complement(&d)).unwrap().passed());
        }
        let trivial = one_object(&["p"]);
        assert_eq!(ultrafilters_of(&trivial).unwrap(), vec![FiniteFamily::tops(&trivial).unwrap()]);
    }

    #[test]
    fn deleting_a_reindexed_element_breaks_closure() {
        let d = two_level();
        let uf = ultrafilters_of(&d).unwrap().remove(0);
        let mut broken = uf.clone();
        // top at b is the reindexing of top at t
        broken.sets[1] &= !bit(AtomSet(3));
        let r = check_family_axioms(&d, FamilyKind::Ultrafilter, &broken).unwrap();
        let c = r.clause("reindex").unwrap();
        assert!(!c.passed);
        assert!(c.counterexample.as_deref().unwrap().contains("b<=t"));
    }

    #[test]
    fn extension_examples() {
        let d = one_object(&["p"]);
        let u = extend_to_ultrafilter(&d, &FiniteFamily::tops(&d).unwrap(), &FiniteFamily::bottoms(&d).unwrap()).unwrap();
        assert_eq!(u, FiniteFamily::tops(&d).unwrap());

        let d = two_level();
        let u = extend_to_ultrafilter(&d, &FiniteFamily::tops(&d).unwrap(), &FiniteFamily::bottoms(&d).unwrap()).unwrap();
        assert!(check_family_axioms(&d, FamilyKind::Ultrafilter, &u).unwrap().passed());
        assert!(!u.contains(d.base.top, AtomSet(0)));

        let mut bad = FiniteFamily::from_fn(&d, |_, _| true).unwrap();
        bad.sets[0] = all_elems(&d, 0);
        assert!(matches!(
            extend_to_ultrafilter(&d, &bad, &FiniteFamily::bottoms(&d).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    /// The closures agree with membership found by the generic witness
    /// search.
    #[test]
    fn closures_agree_with_generated_membership() {
        let d = two_level();
        let gens = [(1usize, AtomSet(1))];
        let mut fam = FiniteFamily::empty(&d);
        fam.insert(1, AtomSet(1));
        let f = filter_closure(&d, &fam);
        let i = ideal_closure(&d, &fam);
        assert!(check_family_axioms(&d, FamilyKind::Filter, &f).unwrap().passed());
        assert!(check_family_axioms(&d, FamilyKind::Ideal, &i).unwrap().passed());
        let b = SearchBounds { depth: 0, max_n: 3 };
        for x in 0..2 {
            for a in elems(&d, x) {
                let (tf, _) = generated_membership(&d, Closure::Filter, &gens, &x, &a, b).unwrap();
                assert_eq!(tf == Tri::True, f.contains(x, a), "filter at {x}, {a}");
                let (ti, _) = generated_membership(&d, Closure::Ideal, &gens, &x, &a, b).unwrap();
                assert_eq!(ti == Tri::True, i.contains(x, a), "ideal at {x}, {a}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let d = two_level();
        let u = ultrafilters_of(&d).unwrap().remove(1);
        assert_eq!(FiniteFamily::from_json(&d, &u.to_json(&d)).unwrap(), u);
    }
}
