//! Universal filters, ideals, ultrafilters and filter-ideal pairs.
//!
//! Two independent routes check the axioms: [`tables`] works exactly on
//! finite doctrines with bitmask families, and [`check_sampled`] evaluates
//! the same clauses for any doctrine over an explicit finite scope with
//! membership given as a predicate.

mod search;
pub mod tables;

use serde::Serialize;

pub use search::{
    check_witness, generated_intersect, generated_membership, instance, witness_search, Closure, Instance, LogEntry,
    MembershipCert, MixedSequent, SearchBounds, SearchLog, SearchOutcome, Witness,
};
pub use tables::{
    check_family_axioms, check_pair_axioms, extend_to_ultrafilter, filter_closure, ideal_closure, intersection,
    ultrafilters_of, universal_filters, universal_ideals, FiniteFamily,
};

use crate::doctrine::{meet_all, Doctrine, Tri};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    Filter,
    Ideal,
    Ultrafilter,
    Ultraideal,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Filter => "filter",
            FamilyKind::Ideal => "ideal",
            FamilyKind::Ultrafilter => "ultrafilter",
            FamilyKind::Ultraideal => "ultraideal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [FamilyKind::Filter, FamilyKind::Ideal, FamilyKind::Ultrafilter, FamilyKind::Ultraideal]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub kind: String,
    pub clauses: Vec<ClauseReport>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseReport> {
        self.clauses.iter().find(|c| c.name == name)
    }

    /// Total number of instances evaluated over all clauses.
    pub fn checked(&self) -> usize {
        self.clauses.iter().map(|c| c.checked).sum()
    }

    pub fn first_failure(&self) -> String {
        self.clauses
            .iter()
            .find(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.counterexample.as_deref().unwrap_or("failed")))
            .unwrap_or_else(|| "none".into())
    }
}

/// The finite part of a doctrine the sampled checker quantifies over.
pub struct Scope<'a, D: Doctrine> {
    pub objects: Vec<D::Obj>,
    pub samples: &'a dyn Fn(&D::Obj) -> Vec<D::Elem>,
    /// Morphism depth passed to [`Doctrine::morphisms`].
    pub depth: usize,
    /// Largest `m` for `⋀_{j≤m} P(f_j)(α)` in the ideal clauses.
    pub max_conj: usize,
}

pub type Membership<'a, D> = &'a dyn Fn(&<D as Doctrine>::Obj, &<D as Doctrine>::Elem) -> bool;

struct Tally {
    name: String,
    checked: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { name: name.into(), checked: 0, counterexample: None }
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

struct Sampled<'s, 'a, D: Doctrine> {
    d: &'s D,
    scope: &'s Scope<'a, D>,
}

impl<D: Doctrine> Sampled<'_, '_, D> {
    fn homs(&self, x: &D::Obj, y: &D::Obj) -> Vec<D::Mor> {
        self.d.morphisms(x, y, self.scope.depth)
    }

    fn split_join(&self, x1: &D::Obj, a1: &D::Elem, x2: &D::Obj, a2: &D::Elem) -> Result<(D::Obj, D::Elem)> {
        let d = self.d;
        let p = d.product(x1, x2);
        let j = d.join(&d.reindex(&d.pr1(x1, x2), a1)?, &d.reindex(&d.pr2(x1, x2), a2)?);
        Ok((p, j))
    }

    /// `P(f)(α) ∈ F` for `α ∈ F` (or, reflected, `P(f)(α) ∈ I ⇒ α ∈ I`).
    fn reindex(&self, name: &str, mem: Membership<D>, reflect: bool) -> Result<ClauseReport> {
        let mut c = Tally::new(name);
        for y in &self.scope.objects {
            for a in (self.scope.samples)(y) {
                if !reflect && !mem(y, &a) {
                    continue;
                }
                for x in &self.scope.objects {
                    for f in self.homs(x, y) {
                        let b = self.d.reindex(&f, &a)?;
                        if reflect {
                            if mem(x, &b) {
                                c.check(mem(y, &a), || format!("{b} at {x} is in but {a} at {y} is not (f = {f})"));
                            }
                        } else {
                            c.check(mem(x, &b), || format!("{a} at {y} along {f} gives {b}, which is missing"));
                        }
                    }
                }
            }
        }
        Ok(c.done())
    }

    fn filter(&self, name: &str, mem: &dyn Fn(&D::Obj, &D::Elem) -> bool) -> Result<ClauseReport> {
        let d = self.d;
        let mut c = Tally::new(name);
        for x in &self.scope.objects {
            let top = d.top(x);
            c.check(mem(x, &top), || format!("top at {x} is missing"));
            let samples = (self.scope.samples)(x);
            for a in samples.iter().filter(|a| mem(x, a)) {
                for b in &samples {
                    if d.leq(x, a, b) == Tri::True {
                        c.check(mem(x, b), || format!("{b} is above {a} at {x} but missing"));
                    }
                    if mem(x, b) {
                        let m = d.meet(a, b);
                        c.check(mem(x, &m), || format!("the meet of {a} and {b} at {x} is missing"));
                    }
                }
            }
        }
        Ok(c.done())
    }

    fn prime(&self, f: Membership<D>) -> Result<ClauseReport> {
        let mut c = Tally::new("prime");
        for x1 in &self.scope.objects {
            for x2 in &self.scope.objects {
                for a1 in (self.scope.samples)(x1) {
                    for a2 in (self.scope.samples)(x2) {
                        let (p, j) = self.split_join(x1, &a1, x2, &a2)?;
                        if f(&p, &j) {
                            c.check(f(x1, &a1) || f(x2, &a2), || format!("{j} at {p} is in but neither {a1} at {x1} nor {a2} at {x2}"));
                        }
                    }
                }
            }
        }
        Ok(c.done())
    }

    fn join(&self, i: Membership<D>) -> Result<ClauseReport> {
        let mut c = Tally::new("join");
        for x1 in &self.scope.objects {
            for x2 in &self.scope.objects {
                for a1 in (self.scope.samples)(x1).into_iter().filter(|a| i(x1, a)) {
                    for a2 in (self.scope.samples)(x2).into_iter().filter(|a| i(x2, a)) {
                        let (p, j) = self.split_join(x1, &a1, x2, &a2)?;
                        c.check(i(&p, &j), || format!("{a1} at {x1} and {a2} at {x2} are in but {j} at {p} is not"));
                    }
                }
            }
        }
        Ok(c.done())
    }

    fn bottom(&self, mem: Membership<D>, wanted: bool) -> ClauseReport {
        let mut c = Tally::new("bottom");
        let t = self.d.terminal();
        c.check(mem(&t, &self.d.bot(&t)) == wanted, || format!("bottom at {t} is {}", if wanted { "missing" } else { "present" }));
        c.done()
    }

    /// All meets `⋀_{f ∈ fs} P(f)(α)` over subsets `fs` of the sampled
    /// hom-set with at most `max_conj` members, the empty one included.
    fn conjunctions(&self, x: &D::Obj, y: &D::Obj, a: &D::Elem) -> Result<Vec<(String, D::Elem)>> {
        use itertools::Itertools;
        let homs = self.homs(x, y);
        let mut reidx = Vec::with_capacity(homs.len());
        for f in &homs {
            reidx.push(self.d.reindex(f, a)?);
        }
        let mut out = Vec::new();
        for m in 0..=self.scope.max_conj.min(homs.len()) {
            for pick in (0..homs.len()).combinations(m) {
                let label = pick.iter().map(|&k| homs[k].to_string()).join(", ");
                out.push((label, meet_all(self.d, x, pick.iter().map(|&k| reidx[k].clone()))));
            }
        }
        Ok(out)
    }

    fn conjunction(&self, i: Membership<D>) -> Result<ClauseReport> {
        let mut c = Tally::new("conjunction");
        for x in &self.scope.objects {
            for y in &self.scope.objects {
                for a in (self.scope.samples)(y) {
                    for (label, m) in self.conjunctions(x, y, &a)? {
                        if i(x, &m) {
                            c.check(i(y, &a), || format!("the meet over [{label}] of {a} is in at {x} but {a} at {y} is not"));
                        }
                    }
                }
            }
        }
        Ok(c.done())
    }

    fn downward(&self, i: Membership<D>) -> ClauseReport {
        let mut c = Tally::new("downward");
        for x in &self.scope.objects {
            let samples = (self.scope.samples)(x);
            for a in samples.iter().filter(|a| i(x, a)) {
                for b in &samples {
                    if self.d.leq(x, b, a) == Tri::True {
                        c.check(i(x, b), || format!("{b} is below {a} at {x} but missing"));
                    }
                }
            }
        }
        c.done()
    }

    fn connecting(&self, f: Membership<D>, i: Membership<D>) -> Result<Vec<ClauseReport>> {
        let d = self.d;
        let mut one = Tally::new("connecting-1");
        let mut two = Tally::new("connecting-2");
        for y in &self.scope.objects {
            for a in (self.scope.samples)(y) {
                for x in &self.scope.objects {
                    let betas: Vec<_> = (self.scope.samples)(x).into_iter().filter(|b| f(x, b)).collect();
                    for (_, m) in self.conjunctions(x, y, &a)? {
                        for beta in &betas {
                            let e = d.meet(beta, &m);
                            if i(x, &e) {
                                one.check(i(y, &a), || format!("{e} at {x} is in I but {a} at {y} is not"));
                            }
                        }
                    }
                }
                for z in &self.scope.objects {
                    for g in (self.scope.samples)(z).into_iter().filter(|g| i(z, g)) {
                        let (p, j) = self.split_join(y, &a, z, &g)?;
                        if f(&p, &j) {
                            two.check(f(y, &a), || format!("{j} at {p} is in F but {a} at {y} is not"));
                        }
                    }
                }
            }
        }
        Ok(vec![one.done(), two.done()])
    }
}

/// Evaluates every clause of the named definition over the scope. Elements
/// produced by reindexing, meets and joins are tested with `mem` directly, so
/// they need not be among the samples.
pub fn check_sampled<D: Doctrine>(d: &D, kind: FamilyKind, scope: &Scope<'_, D>, mem: Membership<D>) -> Result<AxiomReport> {
    let s = Sampled { d, scope };
    let clauses = match kind {
        FamilyKind::Filter => vec![s.reindex("reindex", mem, false)?, s.filter("filter", mem)?],
        FamilyKind::Ultrafilter => {
            vec![s.reindex("reindex", mem, false)?, s.filter("filter", mem)?, s.prime(mem)?, s.bottom(mem, false)]
        }
        FamilyKind::Ideal => vec![s.conjunction(mem)?, s.downward(mem), s.join(mem)?, s.bottom(mem, true)],
        FamilyKind::Ultraideal => {
            let outside = |x: &D::Obj, a: &D::Elem| !mem(x, a);
            vec![s.reindex("reflect", mem, true)?, s.filter("complement-filter", &outside)?, s.join(mem)?, s.bottom(mem, true)]
        }
    };
    Ok(AxiomReport { kind: kind.name().into(), clauses })
}

/// The pair clauses over a scope, named as in [`check_pair_axioms`].
pub fn check_pair_sampled<D: Doctrine>(d: &D, scope: &Scope<'_, D>, f: Membership<D>, i: Membership<D>) -> Result<AxiomReport> {
    let mut clauses = Vec::new();
    for (p, kind, mem) in [("F:", FamilyKind::Filter, f), ("I:", FamilyKind::Ideal, i)] {
        for mut c in check_sampled(d, kind, scope, mem)?.clauses {
            c.name = format!("{p}{}", c.name);
            clauses.push(c);
        }
    }
    clauses.extend(Sampled { d, scope }.connecting(f, i)?);
    Ok(AxiomReport { kind: "pair".into(), clauses })
}
