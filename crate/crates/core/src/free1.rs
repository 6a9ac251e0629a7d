//! The free addition of one layer of universal quantifiers over an object
//! `S`: Boolean combinations of formal generators `∀_S^Y α`, compared through
//! witness search and the model oracle, never canonicalized.

use std::fmt;

use rayon::prelude::*;

use crate::doctrine::{add_constant, ConstAdjoined, Doctrine, KMor, PointSet, Shape, Tri};
use crate::error::{Error, Result};
use crate::filters::{witness_search, MixedSequent, SearchBounds, SearchOutcome, Witness};
use crate::models::{models_at, refutes, PropModel};
use crate::normal::{normal_form, BoolTree, BoolView, Literal, NfKind};
use crate::syntax::{QFFormula, Term};

/// `∀_S^Y α` with `α` in the fiber over `S × Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator<O, E> {
    pub base: O,
    pub bound: O,
    pub body: E,
}

/// How a generator body prints under its quantifier.
pub trait BodyDisplay<O> {
    fn show_under(&self, base: &O, bound: &O) -> String;
}

/// Bound variables `x_{n+i}` print as `y{i+1}`.
impl BodyDisplay<usize> for QFFormula {
    fn show_under(&self, base: &usize, bound: &usize) -> String {
        let sigma: Vec<Term> =
            (0..base + bound).map(|i| if i < *base { Term::Var(i) } else { Term::constant(&format!("y{}", i - base + 1)) }).collect();
        let vars: Vec<String> = (1..=*bound).map(|i| format!("y{i}")).collect();
        let body = self.substitute(&sigma, base + bound).map(|f| f.to_string()).unwrap_or_else(|_| self.to_string());
        if vars.is_empty() {
            format!("forall. {body}")
        } else {
            format!("forall {}. {body}", vars.join(" "))
        }
    }
}

impl BodyDisplay<usize> for crate::doctrine::AtomSet {
    fn show_under(&self, _base: &usize, bound: &usize) -> String {
        format!("forall[{bound}]. {self}")
    }
}

impl BodyDisplay<Shape> for PointSet {
    fn show_under(&self, _base: &Shape, bound: &Shape) -> String {
        format!("forall[{bound}]. {self}")
    }
}

impl<O, E: BodyDisplay<O>> fmt::Display for Generator<O, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body.show_under(&self.base, &self.bound))
    }
}

/// An element of the free Boolean algebra on the generators over one `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Free1Element<O, E> {
    Top,
    Bot,
    Gen(Generator<O, E>),
    Not(Box<Free1Element<O, E>>),
    And(Box<Free1Element<O, E>>, Box<Free1Element<O, E>>),
    Or(Box<Free1Element<O, E>>, Box<Free1Element<O, E>>),
}

impl<O, E> Free1Element<O, E> {
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Self) -> Self {
        Free1Element::Not(Box::new(a))
    }

    pub fn and(a: Self, b: Self) -> Self {
        Free1Element::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        Free1Element::Or(Box::new(a), Box::new(b))
    }

    pub fn generators(&self) -> Vec<&Generator<O, E>> {
        match self {
            Free1Element::Top | Free1Element::Bot => Vec::new(),
            Free1Element::Gen(g) => vec![g],
            Free1Element::Not(a) => a.generators(),
            Free1Element::And(a, b) | Free1Element::Or(a, b) => {
                let mut v = a.generators();
                v.extend(b.generators());
                v
            }
        }
    }

    /// Rebuilds the tree with every generator replaced.
    pub fn try_map<O2, E2>(&self, f: &mut impl FnMut(&Generator<O, E>) -> Result<Generator<O2, E2>>) -> Result<Free1Element<O2, E2>> {
        Ok(match self {
            Free1Element::Top => Free1Element::Top,
            Free1Element::Bot => Free1Element::Bot,
            Free1Element::Gen(g) => Free1Element::Gen(f(g)?),
            Free1Element::Not(a) => Free1Element::not(a.try_map(f)?),
            Free1Element::And(a, b) => Free1Element::and(a.try_map(f)?, b.try_map(f)?),
            Free1Element::Or(a, b) => Free1Element::or(a.try_map(f)?, b.try_map(f)?),
        })
    }
}

impl<O: Clone, E: Clone + BodyDisplay<O>> BoolTree for Free1Element<O, E> {
    type Leaf = Generator<O, E>;
    fn view(&self) -> BoolView<'_, Self> {
        match self {
            Free1Element::Top => BoolView::Top,
            Free1Element::Bot => BoolView::Bot,
            Free1Element::Gen(g) => BoolView::Leaf(g),
            Free1Element::Not(a) => BoolView::Not(a),
            Free1Element::And(a, b) => BoolView::And(a, b),
            Free1Element::Or(a, b) => BoolView::Or(a, b),
        }
    }
}

impl<O, E: BodyDisplay<O>> fmt::Display for Free1Element<O, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn sub<O, E: BodyDisplay<O>>(e: &Free1Element<O, E>) -> String {
            match e {
                Free1Element::Top | Free1Element::Bot | Free1Element::Not(_) => e.to_string(),
                _ => format!("({e})"),
            }
        }
        match self {
            Free1Element::Top => write!(f, "true"),
            Free1Element::Bot => write!(f, "false"),
            Free1Element::Gen(g) => write!(f, "{g}"),
            Free1Element::Not(a) => write!(f, "!{}", sub(a)),
            Free1Element::And(a, b) => write!(f, "{} & {}", sub(a), sub(b)),
            Free1Element::Or(a, b) => write!(f, "{} | {}", sub(a), sub(b)),
        }
    }
}

pub type Elem<D> = Free1Element<<D as Doctrine>::Obj, <D as Doctrine>::Elem>;

/// `∀_S^Y α`.
pub fn forall_gen<D: Doctrine>(d: &D, s: &D::Obj, y: &D::Obj, body: D::Elem) -> Result<Elem<D>> {
    d.check_elem(&d.product(s, y), &body)?;
    Ok(Free1Element::Gen(Generator { base: s.clone(), bound: y.clone(), body }))
}

/// `∀_S^t α` for `α` over `S`, moved to `S × t` along the first projection.
pub fn forall_embed<D: Doctrine>(d: &D, s: &D::Obj, a: &D::Elem) -> Result<Elem<D>> {
    d.check_elem(s, a)?;
    let t = d.terminal();
    let body = d.reindex(&d.pr1(s, &t), a)?;
    forall_gen(d, s, &t, body)
}

fn base_of<D: Doctrine>(e: &Elem<D>) -> Option<D::Obj> {
    e.generators().first().map(|g| g.base.clone())
}

/// Every generator of both elements lives over `s`.
fn check_base<D: Doctrine>(s: &D::Obj, es: &[&Elem<D>]) -> Result<()> {
    for e in es {
        if let Some(g) = e.generators().into_iter().find(|g| g.base != *s) {
            return Err(Error::Mismatch(format!("generator `over {}` mixed with base {s}", g.base)));
        }
    }
    Ok(())
}

/// `f × id_Y : S × Y -> S' × Y` for `f : S -> S'`.
pub fn times_id<D: Doctrine>(d: &D, f: &D::Mor, y: &D::Obj) -> Result<D::Mor> {
    let s = d.source(f);
    d.pair(&d.compose(f, &d.pr1(&s, y))?, &d.pr2(&s, y))
}

/// Replaces each `∀_{S'}^Y α` by `∀_S^Y P(f × id_Y)(α)`.
pub fn free1_reindex<D: Doctrine>(d: &D, f: &D::Mor, e: &Elem<D>) -> Result<Elem<D>> {
    let (s, s2) = (d.source(f), d.target(f));
    e.try_map(&mut |g| {
        if g.base != s2 {
            return Err(Error::Mismatch(format!("reindexing along a map into {s2} an element over {}", g.base)));
        }
        Ok(Generator { base: s.clone(), bound: g.bound.clone(), body: d.reindex(&times_id(d, f, &g.bound)?, &g.body)? })
    })
}

/// Reindexes every element of a sequent at `S'` along `f : S -> S'`.
pub fn reindex_sequent<'a, D: Doctrine + Sync>(
    d: &'a D,
    f: &D::Mor,
    seq: &MixedSequent<ConstAdjoined<'_, D>>,
) -> Result<MixedSequent<ConstAdjoined<'a, D>>> {
    let side = |v: &[(D::Obj, D::Elem)]| -> Result<Vec<(D::Obj, D::Elem)>> {
        v.iter().map(|(y, a)| Ok((y.clone(), d.reindex(&times_id(d, f, y)?, a)?))).collect()
    };
    Ok(MixedSequent {
        forall_prem: side(&seq.forall_prem)?,
        exists_prem: side(&seq.exists_prem)?,
        forall_concl: side(&seq.forall_concl)?,
        exists_concl: side(&seq.exists_concl)?,
    })
}

/// Precomposes each witness morphism `S' × C -> Y` with `f × id_C`.
pub fn transport_witness<D: Doctrine>(
    d: &D,
    f: &D::Mor,
    w: &Witness<KMor<D::Obj, D::Mor>>,
) -> Result<Witness<KMor<D::Obj, D::Mor>>> {
    let tr = |ms: &[KMor<D::Obj, D::Mor>]| -> Result<Vec<KMor<D::Obj, D::Mor>>> {
        ms.iter()
            .map(|m| Ok(KMor { source: m.source.clone(), inner: d.compose(&m.inner, &times_id(d, f, &m.source)?)? }))
            .collect()
    };
    Ok(Witness { morphisms: tr(&w.morphisms)?, morphisms_ex: tr(&w.morphisms_ex)?, ..w.clone() })
}

/// The sequent `⋀ lhs ≤ ⋁ rhs` for one DNF disjunct and one CNF conjunct.
/// Negated generators move to the existential side of the same hand:
/// `¬∀γ = ∃¬γ`.
pub fn clause_sequent<'a, D: Doctrine + Sync>(
    ds: &ConstAdjoined<'a, D>,
    lhs: &[Literal<Generator<D::Obj, D::Elem>>],
    rhs: &[Literal<Generator<D::Obj, D::Elem>>],
) -> MixedSequent<ConstAdjoined<'a, D>> {
    let mut seq = MixedSequent::default();
    for l in lhs {
        let g = &l.leaf;
        if l.positive {
            seq.forall_prem.push((g.bound.clone(), g.body.clone()));
        } else {
            seq.exists_prem.push((g.bound.clone(), ds.neg(&g.bound, &g.body)));
        }
    }
    for l in rhs {
        let g = &l.leaf;
        if l.positive {
            seq.forall_concl.push((g.bound.clone(), g.body.clone()));
        } else {
            seq.exists_concl.push((g.bound.clone(), ds.neg(&g.bound, &g.body)));
        }
    }
    seq
}

/// A model of the base doctrine and a point of `M(S)` refuting a clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    /// Index into the model list.
    pub model: usize,
    pub point: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseStatus<O, M> {
    Proved(Witness<KMor<O, M>>),
    Refuted(Refutation),
    Unknown,
}

impl<O, M> ClauseStatus<O, M> {
    pub fn tri(&self) -> Tri {
        match self {
            ClauseStatus::Proved(_) => Tri::True,
            ClauseStatus::Refuted(_) => Tri::False,
            ClauseStatus::Unknown => Tri::Unknown,
        }
    }
}

pub struct ClauseResult<'a, D: Doctrine + Sync> {
    pub sequent: MixedSequent<ConstAdjoined<'a, D>>,
    pub status: ClauseStatus<D::Obj, D::Mor>,
}

pub struct Free1Verdict<'a, D: Doctrine + Sync> {
    pub status: Tri,
    pub clauses: Vec<ClauseResult<'a, D>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Free1Options {
    pub bounds: SearchBounds,
    /// Worker threads for independent clauses; 1 decides them in order.
    pub jobs: usize,
}

impl Default for Free1Options {
    fn default() -> Self {
        Free1Options { bounds: SearchBounds::default(), jobs: 1 }
    }
}

/// The first model and point, in list order, refuting the sequent at `S`.
pub fn refute_at<'a, D: Doctrine + Sync, M: PropModel<D>>(
    d: &'a D,
    s: &D::Obj,
    models: &[M],
    seq: &MixedSequent<ConstAdjoined<'a, D>>,
) -> Option<Refutation> {
    let ds = add_constant(d, s.clone());
    for (k, m) in models.iter().enumerate() {
        for at in models_at(d, std::slice::from_ref(m), s) {
            if refutes(&ds, &at, seq) {
                return Some(Refutation { model: k, point: at.s });
            }
        }
    }
    None
}

/// Witness search first, then the model oracle.
pub fn decide_clause<'a, D: Doctrine + Sync, M: PropModel<D>>(
    d: &'a D,
    s: &D::Obj,
    seq: &MixedSequent<ConstAdjoined<'a, D>>,
    bounds: SearchBounds,
    models: &[M],
) -> Result<ClauseStatus<D::Obj, D::Mor>> {
    let ds = add_constant(d, s.clone());
    if let SearchOutcome::Witness(w) = witness_search(&ds, seq, bounds, None)? {
        return Ok(ClauseStatus::Proved(w));
    }
    Ok(refute_at(d, s, models, seq).map_or(ClauseStatus::Unknown, ClauseStatus::Refuted))
}

/// Decides `e1 ≤ e2` over `S`: every (DNF disjunct of `e1`, CNF conjunct of
/// `e2`) pair must give a valid sequent. Any refuted clause makes the answer
/// false; otherwise any undecided one makes it unknown.
pub fn free1_leq<'a, D, M>(
    d: &'a D,
    s: &D::Obj,
    e1: &Elem<D>,
    e2: &Elem<D>,
    opts: Free1Options,
    models: &[M],
) -> Result<Free1Verdict<'a, D>>
where
    D: Doctrine + Sync,
    D::Elem: BodyDisplay<D::Obj>,
    M: PropModel<D> + Sync,
{
    check_base::<D>(s, &[e1, e2])?;
    let ds = add_constant(d, s.clone());
    let (l, r) = (normal_form(e1, NfKind::Dnf), normal_form(e2, NfKind::Cnf));
    let mut seqs = Vec::with_capacity(l.clauses.len() * r.clauses.len());
    for dl in &l.clauses {
        for cr in &r.clauses {
            seqs.push(clause_sequent(&ds, dl, cr));
        }
    }
    let decide = |seq: &MixedSequent<ConstAdjoined<'a, D>>| decide_clause(d, s, seq, opts.bounds, models);
    let statuses: Vec<ClauseStatus<D::Obj, D::Mor>> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
        pool.install(|| seqs.par_iter().map(decide).collect::<Result<_>>())?
    } else {
        seqs.iter().map(decide).collect::<Result<_>>()?
    };
    let status = if statuses.iter().any(|c| c.tri() == Tri::False) {
        Tri::False
    } else {
        statuses.iter().fold(Tri::True, |acc, c| acc.and(c.tri()))
    };
    let clauses = seqs.into_iter().zip(statuses).map(|(sequent, status)| ClauseResult { sequent, status }).collect();
    Ok(Free1Verdict { status, clauses })
}

/// The shared base object of an element, if it has any generator.
pub fn element_base<D: Doctrine>(e: &Elem<D>) -> Option<D::Obj> {
    base_of::<D>(e)
}
