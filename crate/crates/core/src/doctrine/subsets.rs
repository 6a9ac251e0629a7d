use std::collections::BTreeSet;
use std::fmt;

use super::{Doctrine, Tri};
use crate::category::{enumerate_morphisms, CtxMor};
use crate::error::{Error, Result};
use crate::models::{all_tuples, StructureModel};
use crate::syntax::Signature;

pub type Tuple = Vec<usize>;

/// A set of tuples; the fiber element type of every subsets-valued backend.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(pub BTreeSet<Tuple>);

impl PointSet {
    pub fn empty() -> Self {
        PointSet(BTreeSet::new())
    }

    pub fn from_tuples(ts: impl IntoIterator<Item = Tuple>) -> Self {
        PointSet(ts.into_iter().collect())
    }

    pub fn contains(&self, t: &[usize]) -> bool {
        self.0.contains(t)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .0
            .iter()
            .map(|t| format!("({})", t.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A finite set presented as a product of factors `{0..k}`.
///
/// Products concatenate factor lists, so the product of two shapes is
/// strictly associative and the terminal object is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape(pub Vec<usize>);

impl Shape {
    pub fn set(k: usize) -> Self {
        Shape(vec![k])
    }

    pub fn card(&self) -> usize {
        self.0.iter().product()
    }

    /// All points, lexicographically.
    pub fn points(&self) -> Vec<Tuple> {
        let mut out = vec![Vec::new()];
        for &k in &self.0 {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..k).map(move |a| {
                        let mut u = t.clone();
                        u.push(a);
                        u
                    })
                })
                .collect();
        }
        out
    }

    /// Position of `t` among [`Shape::points`].
    pub fn index(&self, t: &[usize]) -> usize {
        self.0.iter().zip(t).fold(0, |acc, (&k, &a)| acc * k + a)
    }

    pub fn full(&self) -> PointSet {
        PointSet::from_tuples(self.points())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "[{}]", parts.join("x"))
    }
}

/// A function between shapes, tabulated on the source points in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FnTable {
    pub src: Shape,
    pub tgt: Shape,
    pub table: Vec<Tuple>,
}

impl FnTable {
    pub fn new(src: Shape, tgt: Shape, table: Vec<Tuple>) -> Result<Self> {
        let ok = table.len() == src.card()
            && table.iter().all(|t| t.len() == tgt.0.len() && t.iter().zip(&tgt.0).all(|(a, k)| a < k));
        if !ok {
            return Err(Error::Invalid(format!("not a function {src} -> {tgt}")));
        }
        Ok(FnTable { src, tgt, table })
    }

    pub fn from_fn(src: &Shape, tgt: &Shape, f: impl Fn(&[usize]) -> Tuple) -> Result<Self> {
        let table = src.points().iter().map(|p| f(p)).collect();
        FnTable::new(src.clone(), tgt.clone(), table)
    }

    pub fn apply(&self, t: &[usize]) -> &Tuple {
        &self.table[self.src.index(t)]
    }
}

impl fmt::Display for FnTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .table
            .iter()
            .map(|t| t.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}->{}:[{}]", self.src, self.tgt, rows.join(";"))
    }
}

/// Largest hom-set [`SubsetsDoctrine::morphisms`] will list.
pub const HOM_LIMIT: usize = 1 << 16;
/// Largest carrier whose power set [`Doctrine::elements`] will list.
pub const ELEMENTS_LIMIT: usize = 12;

/// The power-set doctrine over finite sets.
#[derive(Debug, Clone, Copy, Default)]
pub struct SubsetsDoctrine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// `∀` or `∃` along the projection `X × Y -> X`.
pub fn subsets_quantifier(kind: Quantifier, x: &Shape, y: &Shape, s: &PointSet) -> PointSet {
    let ys = y.points();
    let keep = |p: &Tuple| {
        let mut inside = ys.iter().map(|q| {
            let mut t = p.clone();
            t.extend_from_slice(q);
            s.contains(&t)
        });
        match kind {
            Quantifier::Forall => inside.all(|b| b),
            Quantifier::Exists => inside.any(|b| b),
        }
    };
    PointSet::from_tuples(x.points().into_iter().filter(keep))
}

fn preimage(f: &FnTable, a: &PointSet) -> PointSet {
    PointSet::from_tuples(f.src.points().into_iter().filter(|p| a.contains(f.apply(p))))
}

impl Doctrine for SubsetsDoctrine {
    type Obj = Shape;
    type Mor = FnTable;
    type Elem = PointSet;

    fn terminal(&self) -> Shape {
        Shape(Vec::new())
    }
    fn product(&self, x: &Shape, y: &Shape) -> Shape {
        Shape(x.0.iter().chain(&y.0).copied().collect())
    }
    fn pr1(&self, x: &Shape, y: &Shape) -> FnTable {
        let xy = self.product(x, y);
        let k = x.0.len();
        FnTable::from_fn(&xy, x, |p| p[..k].to_vec()).expect("projection")
    }
    fn pr2(&self, x: &Shape, y: &Shape) -> FnTable {
        let xy = self.product(x, y);
        let k = x.0.len();
        FnTable::from_fn(&xy, y, |p| p[k..].to_vec()).expect("projection")
    }
    fn pair(&self, f: &FnTable, g: &FnTable) -> Result<FnTable> {
        if f.src != g.src {
            return Err(Error::Mismatch(format!("pairing needs a common source, got {} and {}", f.src, g.src)));
        }
        let tgt = self.product(&f.tgt, &g.tgt);
        let table = f.table.iter().zip(&g.table).map(|(a, b)| a.iter().chain(b).copied().collect()).collect();
        FnTable::new(f.src.clone(), tgt, table)
    }
    fn identity(&self, x: &Shape) -> FnTable {
        FnTable::new(x.clone(), x.clone(), x.points()).expect("identity")
    }
    fn bang(&self, x: &Shape) -> FnTable {
        FnTable::new(x.clone(), Shape(Vec::new()), vec![Vec::new(); x.card()]).expect("bang")
    }
    fn compose(&self, g: &FnTable, f: &FnTable) -> Result<FnTable> {
        if f.tgt != g.src {
            return Err(Error::Mismatch(format!("cannot compose {} after {}", g, f)));
        }
        FnTable::new(f.src.clone(), g.tgt.clone(), f.table.iter().map(|t| g.apply(t).clone()).collect())
    }
    fn source(&self, f: &FnTable) -> Shape {
        f.src.clone()
    }
    fn target(&self, f: &FnTable) -> Shape {
        f.tgt.clone()
    }

    /// Every function `x -> y`, ordered by the table read as a numeral.
    ///
    /// # Panics
    ///
    /// When the hom-set has more than [`HOM_LIMIT`] elements.
    fn morphisms(&self, x: &Shape, y: &Shape, _depth: usize) -> Vec<FnTable> {
        let (n, m) = (x.card(), y.card());
        let count = (m as f64).powi(n as i32);
        assert!(count <= HOM_LIMIT as f64, "hom-set {x} -> {y} too large to list");
        let ys = y.points();
        all_tuples(m, n)
            .into_iter()
            .map(|idx| FnTable::new(x.clone(), y.clone(), idx.iter().map(|&i| ys[i].clone()).collect()).expect("function"))
            .collect()
    }
    fn hom_is_exhaustive(&self) -> bool {
        true
    }

    fn top(&self, x: &Shape) -> PointSet {
        x.full()
    }
    fn bot(&self, _x: &Shape) -> PointSet {
        PointSet::empty()
    }
    fn meet(&self, a: &PointSet, b: &PointSet) -> PointSet {
        PointSet(a.0.intersection(&b.0).cloned().collect())
    }
    fn join(&self, a: &PointSet, b: &PointSet) -> PointSet {
        PointSet(a.0.union(&b.0).cloned().collect())
    }
    fn neg(&self, x: &Shape, a: &PointSet) -> PointSet {
        PointSet::from_tuples(x.points().into_iter().filter(|p| !a.contains(p)))
    }
    fn reindex(&self, f: &FnTable, a: &PointSet) -> Result<PointSet> {
        self.check_elem(&f.tgt, a)?;
        Ok(preimage(f, a))
    }
    fn leq(&self, _x: &Shape, a: &PointSet, b: &PointSet) -> Tri {
        Tri::from_bool(a.is_subset(b))
    }
    fn elements(&self, x: &Shape) -> Option<Vec<PointSet>> {
        power_set(&x.points())
    }
    fn check_elem(&self, x: &Shape, a: &PointSet) -> Result<()> {
        let ok = a.0.iter().all(|t| t.len() == x.0.len() && t.iter().zip(&x.0).all(|(v, k)| v < k));
        if ok {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("{a} is not a subset of {x}")))
        }
    }
}

fn power_set(points: &[Tuple]) -> Option<Vec<PointSet>> {
    if points.len() > ELEMENTS_LIMIT {
        return None;
    }
    Some(
        (0u64..1 << points.len())
            .map(|mask| PointSet::from_tuples((0..points.len()).filter(|k| mask & (1 << k) != 0).map(|k| points[k].clone())))
            .collect(),
    )
}

/// The subsets doctrine restricted along the term interpretation of one
/// finite structure.
///
/// Objects are contexts `n`, morphisms are term tuples, and the fiber at `n`
/// is the power set of `A^n`; reindexing along a term tuple is preimage
/// under its interpretation.
#[derive(Debug, Clone)]
pub struct StructureDoctrine {
    pub signature: Signature,
    pub structure: StructureModel,
}

impl StructureDoctrine {
    pub fn new(signature: Signature, structure: StructureModel) -> Result<Self> {
        structure.check_signature(&signature)?;
        Ok(StructureDoctrine { signature, structure })
    }

    pub fn points(&self, n: usize) -> Vec<Tuple> {
        all_tuples(self.structure.size, n)
    }

    pub fn eval(&self, f: &CtxMor, v: &[usize]) -> Tuple {
        f.comps.iter().map(|t| self.structure.eval_term(t, v)).collect()
    }
}

impl Doctrine for StructureDoctrine {
    type Obj = usize;
    type Mor = CtxMor;
    type Elem = PointSet;

    fn terminal(&self) -> usize {
        0
    }
    fn product(&self, x: &usize, y: &usize) -> usize {
        x + y
    }
    fn pr1(&self, x: &usize, y: &usize) -> CtxMor {
        CtxMor::pr1(*x, *y)
    }
    fn pr2(&self, x: &usize, y: &usize) -> CtxMor {
        CtxMor::pr2(*x, *y)
    }
    fn pair(&self, f: &CtxMor, g: &CtxMor) -> Result<CtxMor> {
        CtxMor::pair(f, g)
    }
    fn identity(&self, x: &usize) -> CtxMor {
        CtxMor::identity(*x)
    }
    fn bang(&self, x: &usize) -> CtxMor {
        CtxMor { source: *x, comps: Vec::new() }
    }
    fn compose(&self, g: &CtxMor, f: &CtxMor) -> Result<CtxMor> {
        g.compose(f)
    }
    fn source(&self, f: &CtxMor) -> usize {
        f.source
    }
    fn target(&self, f: &CtxMor) -> usize {
        f.target()
    }
    fn morphisms(&self, x: &usize, y: &usize, depth: usize) -> Vec<CtxMor> {
        enumerate_morphisms(&self.signature, *x, *y, depth)
    }

    fn top(&self, x: &usize) -> PointSet {
        PointSet::from_tuples(self.points(*x))
    }
    fn bot(&self, _x: &usize) -> PointSet {
        PointSet::empty()
    }
    fn meet(&self, a: &PointSet, b: &PointSet) -> PointSet {
        PointSet(a.0.intersection(&b.0).cloned().collect())
    }
    fn join(&self, a: &PointSet, b: &PointSet) -> PointSet {
        PointSet(a.0.union(&b.0).cloned().collect())
    }
    fn neg(&self, x: &usize, a: &PointSet) -> PointSet {
        PointSet::from_tuples(self.points(*x).into_iter().filter(|p| !a.contains(p)))
    }
    fn reindex(&self, f: &CtxMor, a: &PointSet) -> Result<PointSet> {
        self.check_elem(&f.target(), a)?;
        Ok(PointSet::from_tuples(self.points(f.source).into_iter().filter(|v| a.contains(&self.eval(f, v)))))
    }
    fn leq(&self, _x: &usize, a: &PointSet, b: &PointSet) -> Tri {
        Tri::from_bool(a.is_subset(b))
    }
    fn elements(&self, x: &usize) -> Option<Vec<PointSet>> {
        power_set(&self.points(*x))
    }
    fn check_elem(&self, x: &usize, a: &PointSet) -> Result<()> {
        let size = self.structure.size;
        if a.0.iter().all(|t| t.len() == *x && t.iter().all(|&v| v < size)) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("{a} is not a subset of the {x}-th power")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doctrine::product_of;

    fn ps(ts: &[&[usize]]) -> PointSet {
        PointSet::from_tuples(ts.iter().map(|t| t.to_vec()))
    }

    #[test]
    fn quantifier_examples() {
        // X = {1,2} as {0,1}, Y = {p,q} as {0,1}
        let (x, y) = (Shape::set(2), Shape::set(2));
        let s = ps(&[&[0, 0], &[0, 1], &[1, 0]]);
        assert_eq!(subsets_quantifier(Quantifier::Forall, &x, &y, &s), ps(&[&[0]]));
        assert_eq!(subsets_quantifier(Quantifier::Exists, &x, &y, &s), ps(&[&[0], &[1]]));
        let xy = SubsetsDoctrine.product(&x, &y);
        assert_eq!(subsets_quantifier(Quantifier::Forall, &x, &y, &xy.full()), x.full());
    }

    #[test]
    fn reindex_is_preimage() {
        let d = SubsetsDoctrine;
        let (x, y) = (Shape::set(3), Shape::set(2));
        let c = FnTable::from_fn(&x, &y, |_| vec![1]).unwrap();
        assert_eq!(d.reindex(&c, &ps(&[&[1]])).unwrap(), x.full());
        assert_eq!(d.reindex(&c, &ps(&[&[0]])).unwrap(), PointSet::empty());
        assert_eq!(d.reindex(&d.identity(&x), &ps(&[&[2]])).unwrap(), ps(&[&[2]]));
        assert!(d.reindex(&c, &ps(&[&[5]])).is_err());
    }

    #[test]
    fn products_and_pairing() {
        let d = SubsetsDoctrine;
        let (x, y) = (Shape::set(2), Shape::set(3));
        let fs = d.morphisms(&x, &y, 0);
        assert_eq!(fs.len(), 9);
        for f in &fs {
            for g in &d.morphisms(&x, &x, 0) {
                let p = d.pair(f, g).unwrap();
                assert_eq!(&d.compose(&d.pr1(&y, &x), &p).unwrap(), f);
                assert_eq!(&d.compose(&d.pr2(&y, &x), &p).unwrap(), g);
            }
        }
        let (obj, projs) = product_of(&d, &[x.clone(), y.clone(), x.clone()]).unwrap();
        assert_eq!(obj, Shape(vec![2, 3, 2]));
        assert_eq!(projs[1].apply(&[1, 2, 0]), &vec![2]);
    }

    #[test]
    fn structure_doctrine_reindexes_by_terms() {
        use crate::models::structure;
        use crate::syntax::Term;
        let sig = Signature::new().with_function("f", 1).unwrap().with_constant("c").unwrap();
        let a = structure(2, &[("f", 1, vec![1, 0]), ("c", 0, vec![0])], &[]);
        let d = StructureDoctrine::new(sig, a).unwrap();
        let f = CtxMor::new(1, vec![Term::app("f", vec![Term::var(0)])]).unwrap();
        assert_eq!(d.reindex(&f, &ps(&[&[0]])).unwrap(), ps(&[&[1]]));
        let c = CtxMor::new(0, vec![Term::constant("c")]).unwrap();
        assert_eq!(d.reindex(&c, &ps(&[&[0]])).unwrap(), ps(&[&[]]));
        assert_eq!(d.neg(&1, &ps(&[&[0]])), ps(&[&[1]]));
    }
}
