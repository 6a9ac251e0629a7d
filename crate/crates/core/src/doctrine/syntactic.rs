use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{Doctrine, Tri};
use crate::category::{enumerate_morphisms, CtxMor};
use crate::error::{Error, Result};
use crate::models::{enumerate_models, StructureModel};
use crate::parse::Theory;
use crate::prop::prop_entails;
use crate::syntax::QFFormula;

/// Quantifier-free formulas in context `n`, ordered by consequence modulo a
/// universal theory.
///
/// The order is approximated in two directions: a Herbrand grounding of the
/// axioms decided propositionally proves inequalities, and a finite model
/// search refutes them.
#[derive(Debug)]
pub struct SyntacticDoctrine {
    pub theory: Theory,
    pub inst_depth: usize,
    pub model_bound: usize,
    grounded: Mutex<HashMap<usize, Arc<Vec<QFFormula>>>>,
    models: Mutex<Option<Arc<Vec<StructureModel>>>>,
}

impl Clone for SyntacticDoctrine {
    fn clone(&self) -> Self {
        SyntacticDoctrine::new(self.theory.clone(), self.inst_depth, self.model_bound)
    }
}

/// A model of the theory and a point of its `n`-th power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub model: StructureModel,
    pub assignment: Vec<usize>,
}

impl std::fmt::Display for Countermodel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<String> = self.assignment.iter().map(|a| (a + 1).to_string()).collect();
        write!(f, "{} at ({})", self.model, labels.join(","))
    }
}

impl SyntacticDoctrine {
    pub fn new(theory: Theory, inst_depth: usize, model_bound: usize) -> Self {
        SyntacticDoctrine {
            theory,
            inst_depth,
            model_bound,
            grounded: Mutex::new(HashMap::new()),
            models: Mutex::new(None),
        }
    }

    /// Instances of every axiom at term tuples over context `n`.
    pub fn ground_axioms(&self, n: usize) -> Arc<Vec<QFFormula>> {
        if let Some(g) = self.grounded.lock().unwrap().get(&n) {
            return g.clone();
        }
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for ax in &self.theory.axioms {
            for m in enumerate_morphisms(&self.theory.signature, n, ax.var_bound(), self.inst_depth) {
                let inst = ax.substitute(&m.comps, n).expect("instances are well-formed");
                if seen.insert(inst.clone()) {
                    out.push(inst);
                }
            }
        }
        let out = Arc::new(out);
        self.grounded.lock().unwrap().insert(n, out.clone());
        out
    }

    /// All models up to the bound, cached.
    pub fn models(&self) -> Arc<Vec<StructureModel>> {
        let mut guard = self.models.lock().unwrap();
        if let Some(m) = guard.as_ref() {
            return m.clone();
        }
        let ms = Arc::new(enumerate_models(&self.theory, self.model_bound).collect::<Vec<_>>());
        *guard = Some(ms.clone());
        ms
    }

    /// The first model and point, in enumeration order, where `a` holds and
    /// `b` fails.
    pub fn countermodel(&self, n: usize, a: &QFFormula, b: &QFFormula) -> Option<Countermodel> {
        for m in self.models().iter() {
            for v in crate::models::all_tuples(m.size, n) {
                if m.holds(a, &v) && !m.holds(b, &v) {
                    return Some(Countermodel { model: m.clone(), assignment: v });
                }
            }
        }
        None
    }
}

impl Doctrine for SyntacticDoctrine {
    type Obj = usize;
    type Mor = CtxMor;
    type Elem = QFFormula;

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
        enumerate_morphisms(&self.theory.signature, *x, *y, depth)
    }

    fn top(&self, _x: &usize) -> QFFormula {
        QFFormula::Top
    }
    fn bot(&self, _x: &usize) -> QFFormula {
        QFFormula::Bot
    }
    fn meet(&self, a: &QFFormula, b: &QFFormula) -> QFFormula {
        match (a, b) {
            (QFFormula::Top, x) | (x, QFFormula::Top) => x.clone(),
            _ => QFFormula::and(a.clone(), b.clone()),
        }
    }
    fn join(&self, a: &QFFormula, b: &QFFormula) -> QFFormula {
        match (a, b) {
            (QFFormula::Bot, x) | (x, QFFormula::Bot) => x.clone(),
            _ => QFFormula::or(a.clone(), b.clone()),
        }
    }
    fn neg(&self, _x: &usize, a: &QFFormula) -> QFFormula {
        match a {
            QFFormula::Not(b) => (**b).clone(),
            _ => QFFormula::not(a.clone()),
        }
    }
    fn reindex(&self, f: &CtxMor, a: &QFFormula) -> Result<QFFormula> {
        if a.var_bound() > f.target() {
            return Err(Error::Mismatch(format!("{a} is not in context {}", f.target())));
        }
        a.substitute(&f.comps, f.source)
    }

    fn leq(&self, x: &usize, a: &QFFormula, b: &QFFormula) -> Tri {
        if self.certify_leq(x, a, b) {
            Tri::True
        } else if self.countermodel(*x, a, b).is_some() {
            Tri::False
        } else {
            Tri::Unknown
        }
    }

    fn certify_leq(&self, x: &usize, a: &QFFormula, b: &QFFormula) -> bool {
        let ground = self.ground_axioms(*x);
        let mut hyps: Vec<QFFormula> = ground.iter().cloned().collect();
        hyps.push(a.clone());
        prop_entails(&hyps, b)
    }

    fn explain_gap(&self, x: &usize, a: &QFFormula, b: &QFFormula) -> Option<String> {
        self.countermodel(*x, a, b).map(|c| c.to_string())
    }

    fn check_elem(&self, x: &usize, a: &QFFormula) -> Result<()> {
        self.theory.signature.check_formula(a, *x).map_err(|e| Error::Mismatch(e.to_string()))
    }
}
