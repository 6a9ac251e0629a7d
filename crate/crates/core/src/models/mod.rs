//! Propositional models into the subsets doctrine.
//!
//! A model assigns to each object a finite set of tuples, to each morphism a
//! function, and to each fiber element a subset. Carriers of products are
//! concatenations: `M(X × Y) = {u ++ v | u ∈ M(X), v ∈ M(Y)}`, which is what
//! lets a model with a point `s ∈ M(S)` act as a model of the constant-adjoined
//! doctrine.

mod finite;
mod quotient;
mod structure;

use std::collections::BTreeSet;

pub use finite::{enumerate_finite_models, rich_model, FiniteModel, NotRich};
pub use quotient::{elementary_quotient, CoverModel, QuotientModel};
pub use structure::{all_tuples, enumerate_models, structure, ModelIter, StructureModel};

use crate::category::CtxMor;
use crate::doctrine::{ConstAdjoined, Doctrine, KMor, PointSet, SyntacticDoctrine, Tuple};
use crate::filters::MixedSequent;
use crate::syntax::QFFormula;

pub trait PropModel<D: Doctrine> {
    fn carrier(&self, d: &D, x: &D::Obj) -> Vec<Tuple>;
    fn apply(&self, d: &D, f: &D::Mor, v: &[usize]) -> Tuple;
    fn interp(&self, d: &D, x: &D::Obj, a: &D::Elem) -> PointSet;

    /// Whether `a` holds at every point of `M(x)`.
    fn validates(&self, d: &D, x: &D::Obj, a: &D::Elem) -> bool {
        let ext = self.interp(d, x, a);
        self.carrier(d, x).iter().all(|v| ext.contains(v))
    }

    /// Whether `a` holds at some point of `M(x)`.
    fn witnesses(&self, d: &D, x: &D::Obj, a: &D::Elem) -> bool {
        !self.interp(d, x, a).is_empty()
    }
}

impl PropModel<SyntacticDoctrine> for StructureModel {
    fn carrier(&self, _d: &SyntacticDoctrine, x: &usize) -> Vec<Tuple> {
        all_tuples(self.size, *x)
    }
    fn apply(&self, _d: &SyntacticDoctrine, f: &CtxMor, v: &[usize]) -> Tuple {
        f.comps.iter().map(|t| self.eval_term(t, v)).collect()
    }
    fn interp(&self, _d: &SyntacticDoctrine, x: &usize, a: &QFFormula) -> PointSet {
        self.extension(*x, a)
    }
}

/// A model of `D` together with a point of `M(S)`, acting as a model of the
/// doctrine with a constant of type `S` adjoined.
#[derive(Debug, Clone)]
pub struct AtS<'m, M> {
    pub model: &'m M,
    pub s: Tuple,
}

impl<D: Doctrine + Sync, M: PropModel<D>> PropModel<ConstAdjoined<'_, D>> for AtS<'_, M> {
    fn carrier(&self, d: &ConstAdjoined<'_, D>, x: &D::Obj) -> Vec<Tuple> {
        self.model.carrier(d.base, x)
    }
    fn apply(&self, d: &ConstAdjoined<'_, D>, f: &KMor<D::Obj, D::Mor>, v: &[usize]) -> Tuple {
        self.model.apply(d.base, &f.inner, &self.prefixed(v))
    }
    fn interp(&self, d: &ConstAdjoined<'_, D>, x: &D::Obj, a: &D::Elem) -> PointSet {
        let k = self.s.len();
        let ext = self.model.interp(d.base, &d.ext(x), a);
        PointSet::from_tuples(ext.0.iter().filter(|t| t[..k] == self.s[..]).map(|t| t[k..].to_vec()))
    }
}

impl<M> AtS<'_, M> {
    fn prefixed(&self, v: &[usize]) -> Tuple {
        self.s.iter().chain(v).copied().collect()
    }
}

/// `{y | (s, y) ∈ 𝔪_{S×Y}(α)}`.
pub fn model_at_s_eval<D: Doctrine, M: PropModel<D>>(d: &D, m: &M, s_obj: &D::Obj, s: &[usize], y: &D::Obj, a: &D::Elem) -> PointSet {
    let k = s.len();
    let ext = m.interp(d, &d.product(s_obj, y), a);
    PointSet::from_tuples(ext.0.iter().filter(|t| t[..k] == *s).map(|t| t[k..].to_vec()))
}

/// Every model of `D_S` obtained from a model of `D` and a point of `M(S)`.
pub fn models_at<'m, D: Doctrine, M: PropModel<D>>(d: &D, models: &'m [M], s_obj: &D::Obj) -> Vec<AtS<'m, M>> {
    models
        .iter()
        .flat_map(|m| m.carrier(d, s_obj).into_iter().map(move |s| AtS { model: m, s }))
        .collect()
}

/// The families of elements valid in every model, and invalid in every
/// model, of a class.
pub struct ValidFamilies<'a, D, M> {
    pub doctrine: &'a D,
    pub models: &'a [M],
}

pub fn valid_universal_family<'a, D: Doctrine, M: PropModel<D>>(d: &'a D, models: &'a [M]) -> ValidFamilies<'a, D, M> {
    ValidFamilies { doctrine: d, models }
}

impl<D: Doctrine, M: PropModel<D>> ValidFamilies<'_, D, M> {
    pub fn in_f(&self, x: &D::Obj, a: &D::Elem) -> bool {
        self.models.iter().all(|m| m.validates(self.doctrine, x, a))
    }

    pub fn in_i(&self, x: &D::Obj, a: &D::Elem) -> bool {
        self.models.iter().all(|m| !m.validates(self.doctrine, x, a))
    }
}

/// Whether a model refutes a sequent: every universal premise is valid,
/// every existential premise has a witness, no universal conclusion is
/// valid and no existential conclusion has a witness.
pub fn refutes<D: Doctrine, M: PropModel<D>>(d: &D, m: &M, seq: &MixedSequent<D>) -> bool {
    seq.forall_prem.iter().all(|(y, a)| m.validates(d, y, a))
        && seq.exists_prem.iter().all(|(w, g)| m.witnesses(d, w, g))
        && !seq.forall_concl.iter().any(|(z, b)| m.validates(d, z, b))
        && !seq.exists_concl.iter().any(|(v, e)| m.witnesses(d, v, e))
}

/// The first model, in the given order, refuting the sequent.
pub fn sequent_countermodel<'m, D: Doctrine, M: PropModel<D>>(d: &D, models: &'m [M], seq: &MixedSequent<D>) -> Option<&'m M> {
    models.iter().find(|m| refutes(d, *m, seq))
}

/// The distinct images of a family of subsets, for quick equality tests.
pub fn images<D: Doctrine, M: PropModel<D>>(d: &D, m: &M, x: &D::Obj, elems: &[D::Elem]) -> BTreeSet<PointSet> {
    elems.iter().map(|a| m.interp(d, x, a)).collect()
}
