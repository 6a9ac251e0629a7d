use std::collections::{BTreeMap, BTreeSet};
use std::marker::PhantomData;

use super::{all_tuples, PropModel, StructureModel};
use crate::category::CtxMor;
use crate::doctrine::{Doctrine, PointSet, StructureDoctrine, Tuple};
use crate::error::{Error, Result};

/// A model of the doctrine of a structure `A` through a covering
/// homomorphism `q : B -> A`: `N(n) = B^n` and `𝔫(α) = (q^n)⁻¹[α]`.
#[derive(Debug, Clone)]
pub struct CoverModel {
    pub cover: StructureModel,
    pub map: Vec<usize>,
}

impl CoverModel {
    /// Checks that `map` is a homomorphism for every function symbol of the
    /// doctrine's signature.
    pub fn new(d: &StructureDoctrine, cover: StructureModel, map: Vec<usize>) -> Result<Self> {
        cover.check_signature(&d.signature)?;
        if map.len() != cover.size || map.iter().any(|&a| a >= d.structure.size) {
            return Err(Error::Invalid("the cover map must send every point of the cover into the base".into()));
        }
        for (f, arity) in &d.signature.functions {
            for args in all_tuples(cover.size, *arity) {
                let t = crate::syntax::Term::App(f.clone(), (0..*arity).map(crate::syntax::Term::Var).collect());
                let up = map[cover.eval_term(&t, &args)];
                let down_args: Vec<usize> = args.iter().map(|&b| map[b]).collect();
                if up != d.structure.eval_term(&t, &down_args) {
                    return Err(Error::Invalid(format!("the cover map does not commute with `{f}`")));
                }
            }
        }
        Ok(CoverModel { cover, map })
    }

    /// The identity cover, i.e. `A` as a model of its own doctrine.
    pub fn identity(d: &StructureDoctrine) -> Self {
        CoverModel { cover: d.structure.clone(), map: (0..d.structure.size).collect() }
    }
}

impl PropModel<StructureDoctrine> for CoverModel {
    fn carrier(&self, _d: &StructureDoctrine, x: &usize) -> Vec<Tuple> {
        all_tuples(self.cover.size, *x)
    }
    fn apply(&self, _d: &StructureDoctrine, f: &CtxMor, v: &[usize]) -> Tuple {
        f.comps.iter().map(|t| self.cover.eval_term(t, v)).collect()
    }
    fn interp(&self, _d: &StructureDoctrine, x: &usize, a: &PointSet) -> PointSet {
        PointSet::from_tuples(
            all_tuples(self.cover.size, *x).into_iter().filter(|v| a.contains(&v.iter().map(|&b| self.map[b]).collect::<Vec<_>>())),
        )
    }
}

/// `N / ∼` where `∼_X = 𝔫(δ_X)`; each class is named by its least tuple.
pub struct QuotientModel<'a, D: Doctrine, M> {
    pub inner: &'a M,
    pub delta: &'a dyn Fn(&D::Obj) -> D::Elem,
    _d: PhantomData<D>,
}

impl<D: Doctrine, M: PropModel<D>> QuotientModel<'_, D, M> {
    /// Each point of `N(x)` mapped to the least point related to it.
    pub fn representatives(&self, d: &D, x: &D::Obj) -> BTreeMap<Tuple, Tuple> {
        let rel = self.inner.interp(d, &d.product(x, x), &(self.delta)(x));
        let pts = self.inner.carrier(d, x);
        let k = pts.first().map_or(0, |p| p.len());
        let mut out = BTreeMap::new();
        for t in &rel.0 {
            let (a, b) = (t[..k].to_vec(), t[k..].to_vec());
            let e = out.entry(a).or_insert_with(|| b.clone());
            if b < *e {
                *e = b;
            }
        }
        for p in pts {
            out.entry(p.clone()).or_insert(p);
        }
        out
    }
}

impl<D: Doctrine, M: PropModel<D>> PropModel<D> for QuotientModel<'_, D, M> {
    fn carrier(&self, d: &D, x: &D::Obj) -> Vec<Tuple> {
        let reps: BTreeSet<Tuple> = self.representatives(d, x).into_values().collect();
        reps.into_iter().collect()
    }
    fn apply(&self, d: &D, f: &D::Mor, v: &[usize]) -> Tuple {
        let image = self.inner.apply(d, f, v);
        self.representatives(d, &d.target(f)).remove(&image).unwrap_or(image)
    }
    fn interp(&self, d: &D, x: &D::Obj, a: &D::Elem) -> PointSet {
        let reps = self.representatives(d, x);
        PointSet::from_tuples(self.inner.interp(d, x, a).0.iter().map(|v| reps[v].clone()))
    }
}

/// The points of an object and the pairs related by `𝔫(δ)`.
type Relation = (Vec<Tuple>, BTreeSet<(Tuple, Tuple)>);

fn fail(msg: String) -> Error {
    Error::Precondition(msg)
}

/// Forms `N / ∼` and verifies, over the listed objects, morphisms and
/// sample elements: `∼` is an equivalence, it is respected by every
/// morphism and every sample, quotient carriers of products are products,
/// `𝔪(δ)` is the diagonal, and validity is unchanged.
pub fn elementary_quotient<'a, D: Doctrine, M: PropModel<D>>(
    d: &D,
    n: &'a M,
    delta: &'a dyn Fn(&D::Obj) -> D::Elem,
    objects: &[D::Obj],
    morphisms: &[D::Mor],
    samples: &dyn Fn(&D::Obj) -> Vec<D::Elem>,
) -> Result<QuotientModel<'a, D, M>> {
    let q = QuotientModel { inner: n, delta, _d: PhantomData };
    let related = |x: &D::Obj| -> Result<Relation> {
        let pts = n.carrier(d, x);
        let k = pts.first().map_or(0, |p| p.len());
        let rel = n.interp(d, &d.product(x, x), &delta(x));
        let pairs = rel.0.iter().map(|t| (t[..k].to_vec(), t[k..].to_vec())).collect();
        Ok((pts, pairs))
    };
    for x in objects {
        let (pts, rel) = related(x)?;
        for a in &pts {
            if !rel.contains(&(a.clone(), a.clone())) {
                return Err(fail(format!("the relation at {x} is not reflexive at {a:?}")));
            }
        }
        for (a, b) in &rel {
            if !rel.contains(&(b.clone(), a.clone())) {
                return Err(fail(format!("the relation at {x} is not symmetric at {a:?}, {b:?}")));
            }
            for (c, e) in rel.range((b.clone(), Vec::new())..) {
                if c != b {
                    break;
                }
                if !rel.contains(&(a.clone(), e.clone())) {
                    return Err(fail(format!("the relation at {x} is not transitive at {a:?}, {b:?}, {e:?}")));
                }
            }
        }
        for alpha in samples(x) {
            let ext = n.interp(d, x, &alpha);
            if rel.iter().any(|(a, b)| ext.contains(a) != ext.contains(b)) {
                return Err(fail(format!("{alpha} at {x} is not a union of classes")));
            }
            if q.validates(d, x, &alpha) != n.validates(d, x, &alpha) {
                return Err(fail(format!("validity of {alpha} at {x} changes in the quotient")));
            }
        }
        let mx = q.carrier(d, x);
        let xx = d.product(x, x);
        let mut prod: Vec<Tuple> = Vec::new();
        for u in &mx {
            for v in &mx {
                prod.push(u.iter().chain(v).copied().collect());
            }
        }
        prod.sort();
        if q.carrier(d, &xx) != prod {
            return Err(fail(format!("the quotient at {x} × {x} is not the product of the quotients")));
        }
        let diag = PointSet::from_tuples(mx.iter().map(|u| u.iter().chain(u).copied().collect()));
        if q.interp(d, &xx, &delta(x)) != diag {
            return Err(fail(format!("delta at {x} is not interpreted as the diagonal")));
        }
    }
    for f in morphisms {
        let (src, tgt) = (d.source(f), d.target(f));
        let (_, rel) = related(&src)?;
        let (_, rel_t) = related(&tgt)?;
        for (a, b) in &rel {
            if !rel_t.contains(&(n.apply(d, f, a), n.apply(d, f, b))) {
                return Err(fail(format!("{f} does not respect the relation")));
            }
        }
    }
    Ok(q)
}
