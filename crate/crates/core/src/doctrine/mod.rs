//! The Boolean doctrine interface and its backends.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::Serialize;

use crate::error::Result;

mod constant;
mod equality;
mod finite;
mod subsets;
mod syntactic;

pub use constant::{add_constant, ConstAdjoined, KMor};
pub use equality::{check_elementary, ConditionReport, ElementaryReport};
pub use finite::{AtomSet, FiniteDoctrine};
pub use subsets::{
    subsets_quantifier, FnTable, PointSet, Quantifier, Shape, StructureDoctrine, SubsetsDoctrine, Tuple,
};
pub use syntactic::{Countermodel, SyntacticDoctrine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }
}

/// A functor from a category with finite products to Boolean algebras.
///
/// Fiber elements are representatives; equality of elements is decided by
/// [`Doctrine::leq`], never by `==`, except on backends whose elements are
/// canonical (all but the syntactic one).
pub trait Doctrine {
    type Obj: Clone + Eq + Hash + Debug + Display + Send + Sync;
    type Mor: Clone + Eq + Hash + Debug + Display + Send + Sync;
    type Elem: Clone + Eq + Hash + Debug + Display + Send + Sync;

    fn terminal(&self) -> Self::Obj;
    fn product(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj;
    fn pr1(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;
    fn pr2(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;
    fn pair(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// The unique morphism into the terminal object.
    fn bang(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;

    /// Morphisms `x -> y` up to a size bound, in a fixed canonical order.
    fn morphisms(&self, x: &Self::Obj, y: &Self::Obj, depth: usize) -> Vec<Self::Mor>;
    /// Whether [`Doctrine::morphisms`] returns the whole hom-set at every bound.
    fn hom_is_exhaustive(&self) -> bool {
        false
    }
    /// All objects, for backends with finitely many.
    fn objects(&self) -> Option<Vec<Self::Obj>> {
        None
    }

    fn top(&self, x: &Self::Obj) -> Self::Elem;
    fn bot(&self, x: &Self::Obj) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Obj, a: &Self::Elem) -> Self::Elem;
    fn reindex(&self, f: &Self::Mor, a: &Self::Elem) -> Result<Self::Elem>;
    fn leq(&self, x: &Self::Obj, a: &Self::Elem, b: &Self::Elem) -> Tri;

    /// A sound, possibly incomplete, fast test for `a ≤ b`.
    ///
    /// Agrees with `leq(..) == Tri::True`; backends override it to skip
    /// countermodel search.
    fn certify_leq(&self, x: &Self::Obj, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.leq(x, a, b) == Tri::True
    }

    /// A human-readable refutation of `a ≤ b`, when the backend has one.
    fn explain_gap(&self, _x: &Self::Obj, _a: &Self::Elem, _b: &Self::Elem) -> Option<String> {
        None
    }

    /// All elements of the fiber, for backends with small finite fibers.
    fn elements(&self, _x: &Self::Obj) -> Option<Vec<Self::Elem>> {
        None
    }

    fn check_elem(&self, _x: &Self::Obj, _a: &Self::Elem) -> Result<()> {
        Ok(())
    }
}

pub fn meet_all<D: Doctrine>(d: &D, x: &D::Obj, items: impl IntoIterator<Item = D::Elem>) -> D::Elem {
    let mut it = items.into_iter();
    match it.next() {
        None => d.top(x),
        Some(first) => it.fold(first, |acc, e| d.meet(&acc, &e)),
    }
}

pub fn join_all<D: Doctrine>(d: &D, x: &D::Obj, items: impl IntoIterator<Item = D::Elem>) -> D::Elem {
    let mut it = items.into_iter();
    match it.next() {
        None => d.bot(x),
        Some(first) => it.fold(first, |acc, e| d.join(&acc, &e)),
    }
}

/// The product `((a1 × a2) × a3) × ...` with its projections; the empty
/// product is the terminal object.
pub fn product_of<D: Doctrine>(d: &D, objs: &[D::Obj]) -> Result<(D::Obj, Vec<D::Mor>)> {
    let Some((first, rest)) = objs.split_first() else {
        return Ok((d.terminal(), Vec::new()));
    };
    let mut obj = first.clone();
    let mut projs = vec![d.identity(first)];
    for a in rest {
        let p1 = d.pr1(&obj, a);
        let mut next = Vec::with_capacity(projs.len() + 1);
        for p in &projs {
            next.push(d.compose(p, &p1)?);
        }
        next.push(d.pr2(&obj, a));
        obj = d.product(&obj, a);
        projs = next;
    }
    Ok((obj, projs))
}

/// `⟨f1, ..., fn⟩` into the product built by [`product_of`].
pub fn tuple<D: Doctrine>(d: &D, source: &D::Obj, mors: &[D::Mor]) -> Result<D::Mor> {
    let Some((first, rest)) = mors.split_first() else {
        return Ok(d.bang(source));
    };
    let mut acc = first.clone();
    for m in rest {
        acc = d.pair(&acc, m)?;
    }
    Ok(acc)
}

/// The diagonal `X -> X × X`.
pub fn diagonal<D: Doctrine>(d: &D, x: &D::Obj) -> Result<D::Mor> {
    d.pair(&d.identity(x), &d.identity(x))
}

pub fn fiber_eq<D: Doctrine>(d: &D, x: &D::Obj, a: &D::Elem, b: &D::Elem) -> Tri {
    d.leq(x, a, b).and(d.leq(x, b, a))
}
