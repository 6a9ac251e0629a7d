use std::fmt;
use std::hash::Hash;

use super::{Doctrine, Tri};
use crate::error::{Error, Result};

/// A morphism `source ⇝ y` of the constant-adjoined base, stored as the
/// underlying morphism `S × source -> y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KMor<O, M> {
    pub source: O,
    pub inner: M,
}

impl<O, M: fmt::Display> fmt::Display for KMor<O, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner)
    }
}

/// The doctrine obtained by adding a constant of type `S`.
///
/// Objects are unchanged, `Hom(X, Y)` becomes `Hom(S × X, Y)` with the
/// reader-comonad (Kleisli) composition, and the fiber over `X` is the old
/// fiber over `S × X`.
#[derive(Debug, Clone)]
pub struct ConstAdjoined<'a, D: Doctrine> {
    pub base: &'a D,
    pub s: D::Obj,
}

pub fn add_constant<D: Doctrine>(d: &D, s: D::Obj) -> ConstAdjoined<'_, D> {
    ConstAdjoined { base: d, s }
}

impl<D: Doctrine> ConstAdjoined<'_, D> {
    /// `S × x` in the old base.
    pub fn ext(&self, x: &D::Obj) -> D::Obj {
        self.base.product(&self.s, x)
    }

    /// `⟨pr₁, f⟩ : S × X -> S × Y`.
    pub fn lift(&self, f: &KMor<D::Obj, D::Mor>) -> Result<D::Mor> {
        self.base.pair(&self.base.pr1(&self.s, &f.source), &f.inner)
    }

    /// The distinguished constant `t ⇝ S`, the identity of `S` in disguise.
    pub fn constant(&self) -> KMor<D::Obj, D::Mor> {
        let t = self.base.terminal();
        KMor { inner: self.base.pr1(&self.s, &t), source: t }
    }

    /// The canonical map from the old fiber over `x` into the new one,
    /// reindexing along `pr₂ : S × x -> x`.
    pub fn embed(&self, x: &D::Obj, a: &D::Elem) -> Result<D::Elem> {
        self.base.reindex(&self.base.pr2(&self.s, x), a)
    }

    /// An old morphism `x -> y` seen as a new one that ignores the constant.
    pub fn embed_mor(&self, f: &D::Mor) -> Result<KMor<D::Obj, D::Mor>> {
        let x = self.base.source(f);
        Ok(KMor { inner: self.base.compose(f, &self.base.pr2(&self.s, &x))?, source: x })
    }
}

impl<D: Doctrine> Doctrine for ConstAdjoined<'_, D>
where
    D: Sync,
{
    type Obj = D::Obj;
    type Mor = KMor<D::Obj, D::Mor>;
    type Elem = D::Elem;

    fn terminal(&self) -> D::Obj {
        self.base.terminal()
    }
    fn product(&self, x: &D::Obj, y: &D::Obj) -> D::Obj {
        self.base.product(x, y)
    }
    fn pr1(&self, x: &D::Obj, y: &D::Obj) -> Self::Mor {
        let xy = self.base.product(x, y);
        let inner = self.base.compose(&self.base.pr1(x, y), &self.base.pr2(&self.s, &xy)).expect("projections compose");
        KMor { source: xy, inner }
    }
    fn pr2(&self, x: &D::Obj, y: &D::Obj) -> Self::Mor {
        let xy = self.base.product(x, y);
        let inner = self.base.compose(&self.base.pr2(x, y), &self.base.pr2(&self.s, &xy)).expect("projections compose");
        KMor { source: xy, inner }
    }
    fn pair(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        if f.source != g.source {
            return Err(Error::Mismatch(format!("pairing morphisms from {} and {}", f.source, g.source)));
        }
        Ok(KMor { source: f.source.clone(), inner: self.base.pair(&f.inner, &g.inner)? })
    }
    fn identity(&self, x: &D::Obj) -> Self::Mor {
        KMor { source: x.clone(), inner: self.base.pr2(&self.s, x) }
    }
    fn bang(&self, x: &D::Obj) -> Self::Mor {
        KMor { source: x.clone(), inner: self.base.bang(&self.ext(x)) }
    }
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        Ok(KMor { source: f.source.clone(), inner: self.base.compose(&g.inner, &self.lift(f)?)? })
    }
    fn source(&self, f: &Self::Mor) -> D::Obj {
        f.source.clone()
    }
    fn target(&self, f: &Self::Mor) -> D::Obj {
        self.base.target(&f.inner)
    }
    fn morphisms(&self, x: &D::Obj, y: &D::Obj, depth: usize) -> Vec<Self::Mor> {
        self.base
            .morphisms(&self.ext(x), y, depth)
            .into_iter()
            .map(|inner| KMor { source: x.clone(), inner })
            .collect()
    }
    fn hom_is_exhaustive(&self) -> bool {
        self.base.hom_is_exhaustive()
    }
    fn objects(&self) -> Option<Vec<D::Obj>> {
        self.base.objects()
    }

    fn top(&self, x: &D::Obj) -> D::Elem {
        self.base.top(&self.ext(x))
    }
    fn bot(&self, x: &D::Obj) -> D::Elem {
        self.base.bot(&self.ext(x))
    }
    fn meet(&self, a: &D::Elem, b: &D::Elem) -> D::Elem {
        self.base.meet(a, b)
    }
    fn join(&self, a: &D::Elem, b: &D::Elem) -> D::Elem {
        self.base.join(a, b)
    }
    fn neg(&self, x: &D::Obj, a: &D::Elem) -> D::Elem {
        self.base.neg(&self.ext(x), a)
    }
    fn reindex(&self, f: &Self::Mor, a: &D::Elem) -> Result<D::Elem> {
        self.base.reindex(&self.lift(f)?, a)
    }
    fn leq(&self, x: &D::Obj, a: &D::Elem, b: &D::Elem) -> Tri {
        self.base.leq(&self.ext(x), a, b)
    }
    fn certify_leq(&self, x: &D::Obj, a: &D::Elem, b: &D::Elem) -> bool {
        self.base.certify_leq(&self.ext(x), a, b)
    }
    fn explain_gap(&self, x: &D::Obj, a: &D::Elem, b: &D::Elem) -> Option<String> {
        self.base.explain_gap(&self.ext(x), a, b)
    }
    fn elements(&self, x: &D::Obj) -> Option<Vec<D::Elem>> {
        self.base.elements(&self.ext(x))
    }
    fn check_elem(&self, x: &D::Obj, a: &D::Elem) -> Result<()> {
        self.base.check_elem(&self.ext(x), a)
    }
}
