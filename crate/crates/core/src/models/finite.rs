use super::PropModel;
use crate::category::SlMor;
use crate::doctrine::{AtomSet, Doctrine, FiniteDoctrine, PointSet, Tuple};

/// A model of a finite doctrine.
///
/// Products in a semilattice base are idempotent, so `M(x) = M(x) × M(x)`
/// forces every carrier to be empty or a point. The present objects form a
/// filter of the base, and at each present object the interpretation is a
/// Boolean homomorphism onto `{∅, {pt}}`, which is evaluation at one atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteModel {
    pub present: Vec<bool>,
    pub atom: Vec<Option<usize>>,
}

impl PropModel<FiniteDoctrine> for FiniteModel {
    fn carrier(&self, _d: &FiniteDoctrine, x: &usize) -> Vec<Tuple> {
        if self.present[*x] {
            vec![Vec::new()]
        } else {
            Vec::new()
        }
    }
    fn apply(&self, _d: &FiniteDoctrine, _f: &SlMor, _v: &[usize]) -> Tuple {
        Vec::new()
    }
    fn interp(&self, _d: &FiniteDoctrine, x: &usize, a: &AtomSet) -> PointSet {
        match self.atom[*x] {
            Some(k) if a.0 & (1 << k) != 0 => PointSet::from_tuples([Vec::new()]),
            _ => PointSet::empty(),
        }
    }
}

/// Every model of a finite doctrine, ordered by the set of present objects
/// (as a bitmask) and then by the chosen atoms.
pub fn enumerate_finite_models(d: &FiniteDoctrine) -> Vec<FiniteModel> {
    let base = &d.base;
    let n = base.len();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let present: Vec<bool> = (0..n).map(|x| mask & (1 << x) != 0).collect();
        let is_filter = present[base.top]
            && (0..n).all(|x| (0..n).all(|y| {
                let up = !(present[x] && base.leq(x, y)) || present[y];
                let meet = !(present[x] && present[y]) || present[base.product(x, y)];
                up && meet
            }));
        if !is_filter {
            continue;
        }
        let objs: Vec<usize> = (0..n).filter(|&x| present[x]).collect();
        if objs.iter().any(|&x| d.atoms[x].is_empty()) {
            continue;
        }
        let radices: Vec<usize> = objs.iter().map(|&x| d.atoms[x].len()).collect();
        for choice in itertools::Itertools::multi_cartesian_product(radices.iter().map(|&r| 0..r)) {
            let mut atom = vec![None; n];
            for (&x, &k) in objs.iter().zip(&choice) {
                atom[x] = Some(k);
            }
            let natural = objs.iter().all(|&x| {
                objs.iter().all(|&y| !base.leq(x, y) || Some(d.map(x, y)[atom[x].unwrap()]) == atom[y])
            });
            if natural {
                out.push(FiniteModel { present: present.clone(), atom });
            }
        }
        if objs.is_empty() {
            out.push(FiniteModel { present: present.clone(), atom: vec![None; n] });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotRich {
    /// `element ∉ F_object` but no point `t -> object` refutes it.
    Witness { object: usize, element: AtomSet },
    /// The family does not come from the point model; it was not an
    /// ultrafilter to begin with.
    Mismatch { object: usize, element: AtomSet },
}

/// The model `Hom(t, -)` of a rich ultrafilter.
///
/// In a semilattice `Hom(t, x)` is a point exactly when `x` is the top, so
/// the model is present only there, at the atom generating `F_t`.
pub fn rich_model(d: &FiniteDoctrine, in_f: impl Fn(usize, AtomSet) -> bool) -> Result<FiniteModel, NotRich> {
    let n = d.base.len();
    let t = d.terminal();
    for x in 0..n {
        for a in d.elements(&x).expect("finite fibers") {
            if in_f(x, a) {
                continue;
            }
            let refuted = d.morphisms(&t, &x, 0).iter().any(|c| !in_f(t, d.reindex(c, &a).expect("reindex")));
            if !refuted {
                return Err(NotRich::Witness { object: x, element: a });
            }
        }
    }
    let mut atom = vec![None; n];
    atom[t] = (0..d.atoms[t].len()).find(|&k| in_f(t, AtomSet(1 << k)));
    let present: Vec<bool> = (0..n).map(|x| x == t).collect();
    let m = FiniteModel { present, atom };
    for x in 0..n {
        for a in d.elements(&x).expect("finite fibers") {
            if in_f(x, a) != m.validates(d, &x, &a) {
                return Err(NotRich::Mismatch { object: x, element: a });
            }
        }
    }
    Ok(m)
}
