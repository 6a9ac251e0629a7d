use serde::Serialize;

use super::{diagonal, product_of, Doctrine, Tri};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub name: &'static str,
    pub status: Tri,
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementaryReport {
    pub conditions: Vec<ConditionReport>,
}

impl ElementaryReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.status == Tri::True)
    }

    pub fn status(&self, name: &str) -> Option<Tri> {
        self.conditions.iter().find(|c| c.name == name).map(|c| c.status)
    }
}

struct Tally {
    name: &'static str,
    status: Tri,
    checked: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, status: Tri::True, checked: 0, counterexample: None }
    }

    fn record(&mut self, verdict: Tri, what: impl FnOnce() -> String) {
        self.checked += 1;
        match verdict {
            Tri::True => {}
            Tri::False => {
                if self.status != Tri::False {
                    self.counterexample = Some(what());
                }
                self.status = Tri::False;
            }
            Tri::Unknown => {
                if self.status == Tri::True {
                    self.status = Tri::Unknown;
                    self.counterexample = Some(what());
                }
            }
        }
    }

    fn done(self) -> ConditionReport {
        ConditionReport { name: self.name, status: self.status, checked: self.checked, counterexample: self.counterexample }
    }
}

/// Checks reflexivity, substitutivity and pairing for a candidate equality
/// family over the listed objects, plus the symmetry they imply.
///
/// Substitutivity is checked for every element of `samples(x)`; pairing for
/// every ordered pair of listed objects.
pub fn check_elementary<D: Doctrine>(
    d: &D,
    objects: &[D::Obj],
    delta: impl Fn(&D::Obj) -> D::Elem,
    samples: impl Fn(&D::Obj) -> Vec<D::Elem>,
) -> Result<ElementaryReport> {
    let mut refl = Tally::new("reflexivity");
    let mut subst = Tally::new("substitutivity");
    let mut pairing = Tally::new("pairing");
    let mut symm = Tally::new("symmetry");
    for x in objects {
        let dx = delta(x);
        let xx = d.product(x, x);
        let at_diag = d.reindex(&diagonal(d, x)?, &dx)?;
        refl.record(d.leq(x, &d.top(x), &at_diag), || format!("top is not below the diagonal of delta at {x}"));
        let (p1, p2) = (d.pr1(x, x), d.pr2(x, x));
        for a in samples(x) {
            let lhs = d.meet(&d.reindex(&p1, &a)?, &dx);
            let rhs = d.reindex(&p2, &a)?;
            subst.record(d.leq(&xx, &lhs, &rhs), || format!("alpha = {a} at {x}"));
        }
        let swap = d.pair(&p2, &p1)?;
        symm.record(d.leq(&xx, &dx, &d.reindex(&swap, &dx)?), || format!("delta at {x} is not symmetric"));
    }
    for x in objects {
        for y in objects {
            let xy = d.product(x, y);
            let (q, projs) = product_of(d, &[xy.clone(), xy.clone()])?;
            let (l, r) = (&projs[0], &projs[1]);
            let a = d.compose(&d.pr1(x, y), l)?;
            let b = d.compose(&d.pr2(x, y), l)?;
            let c = d.compose(&d.pr1(x, y), r)?;
            let e = d.compose(&d.pr2(x, y), r)?;
            let lhs = d.meet(&d.reindex(&d.pair(&a, &c)?, &delta(x))?, &d.reindex(&d.pair(&b, &e)?, &delta(y))?);
            pairing.record(d.leq(&q, &lhs, &delta(&xy)), || format!("X = {x}, Y = {y}"));
        }
    }
    Ok(ElementaryReport { conditions: vec![refl.done(), subst.done(), pairing.done(), symm.done()] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::SemilatticeCategory;
    use crate::doctrine::{FiniteDoctrine, PointSet, Shape, SubsetsDoctrine};

    fn shapes() -> Vec<Shape> {
        vec![Shape(vec![]), Shape::set(1), Shape::set(2), Shape::set(3)]
    }

    fn diag(x: &Shape) -> PointSet {
        PointSet::from_tuples(x.points().into_iter().map(|p| p.iter().chain(&p).copied().collect()))
    }

    #[test]
    fn diagonal_is_an_equality_on_subsets() {
        let d = SubsetsDoctrine;
        let r = check_elementary(&d, &shapes(), diag, |x| d.elements(x).unwrap()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    /// Oracle: on {0,1} with delta = everything, alpha = {0} gives
    /// pr1*(alpha) ∧ delta = {(0,0),(0,1)}, which is not inside
    /// pr2*(alpha) = {(0,0),(1,0)}.
    #[test]
    fn full_relation_fails_substitutivity() {
        let d = SubsetsDoctrine;
        let two = Shape::set(2);
        let full = |x: &Shape| d.top(&d.product(x, x));
        let singleton = PointSet::from_tuples([vec![0]]);
        let r = check_elementary(&d, &[two], full, |_| vec![singleton.clone()]).unwrap();
        assert_eq!(r.status("reflexivity"), Some(Tri::True));
        assert_eq!(r.status("substitutivity"), Some(Tri::False));
        assert!(r.conditions[1].counterexample.as_deref().unwrap().contains("{(0)}"));
    }

    /// On a semilattice base both projections `X × X -> X` are the
    /// identity, so substitutivity cannot fail there; the top family only
    /// fails it over a base with genuine diagonals.
    #[test]
    fn top_family() {
        let base = SemilatticeCategory::chain(&["t"]);
        let d = FiniteDoctrine::new(base, vec![vec!["p".into(), "q".into()]], |_, _| None).unwrap();
        let r = check_elementary(&d, &[0], |x| d.top(x), |x| d.elements(x).unwrap()).unwrap();
        assert!(r.passed());
        let s = SubsetsDoctrine;
        let r = check_elementary(&s, &shapes(), |x| s.top(&s.product(x, x)), |x| s.elements(x).unwrap()).unwrap();
        assert_eq!(r.status("reflexivity"), Some(Tri::True));
        assert_eq!(r.status("substitutivity"), Some(Tri::False));
    }
}
