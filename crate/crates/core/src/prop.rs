//! Propositional entailment with atoms as independent variables.
//!
//! Formulas are clausified by the Tseitin encoding and decided by a plain
//! DPLL loop (unit propagation plus chronological backtracking).

use std::collections::HashMap;

use crate::syntax::QFFormula;

/// `hyps ⊨ goal` with every distinct atom an independent variable.
pub fn prop_entails(hyps: &[QFFormula], goal: &QFFormula) -> bool {
    let mut enc = Encoder::default();
    for h in hyps {
        enc.assert(h, true);
    }
    enc.assert(goal, false);
    !enc.solve()
}

pub fn satisfiable(fs: &[QFFormula]) -> bool {
    let mut enc = Encoder::default();
    for f in fs {
        enc.assert(f, true);
    }
    enc.solve()
}

type Lit = i32;

#[derive(Default)]
struct Encoder {
    atoms: HashMap<QFFormula, Lit>,
    nvars: i32,
    clauses: Vec<Vec<Lit>>,
    truth: Option<Lit>,
}

impl Encoder {
    fn fresh(&mut self) -> Lit {
        self.nvars += 1;
        self.nvars
    }

    fn truth(&mut self) -> Lit {
        if let Some(t) = self.truth {
            return t;
        }
        let t = self.fresh();
        self.clauses.push(vec![t]);
        self.truth = Some(t);
        t
    }

    /// Adds the constraint `f == positive`, splitting top-level structure.
    fn assert(&mut self, f: &QFFormula, positive: bool) {
        match (f, positive) {
            (QFFormula::Not(a), _) => self.assert(a, !positive),
            (QFFormula::And(a, b), true) | (QFFormula::Or(a, b), false) => {
                self.assert(a, positive);
                self.assert(b, positive);
            }
            (QFFormula::Top, true) | (QFFormula::Bot, false) => {}
            (QFFormula::Top, false) | (QFFormula::Bot, true) => self.clauses.push(Vec::new()),
            (QFFormula::Or(a, b), true) => {
                let (x, y) = (self.encode(a), self.encode(b));
                self.clauses.push(vec![x, y]);
            }
            (QFFormula::And(a, b), false) => {
                let (x, y) = (self.encode(a), self.encode(b));
                self.clauses.push(vec![-x, -y]);
            }
            (QFFormula::Atom(..), _) => {
                let v = self.encode(f);
                self.clauses.push(vec![if positive { v } else { -v }]);
            }
        }
    }

    fn encode(&mut self, f: &QFFormula) -> Lit {
        match f {
            QFFormula::Atom(..) => {
                if let Some(&v) = self.atoms.get(f) {
                    return v;
                }
                let v = self.fresh();
                self.atoms.insert(f.clone(), v);
                v
            }
            QFFormula::Top => self.truth(),
            QFFormula::Bot => -self.truth(),
            QFFormula::Not(a) => -self.encode(a),
            QFFormula::And(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                let v = self.fresh();
                self.clauses.push(vec![-v, x]);
                self.clauses.push(vec![-v, y]);
                self.clauses.push(vec![v, -x, -y]);
                v
            }
            QFFormula::Or(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                let v = self.fresh();
                self.clauses.push(vec![-v, x, y]);
                self.clauses.push(vec![v, -x]);
                self.clauses.push(vec![v, -y]);
                v
            }
        }
    }

    fn solve(&self) -> bool {
        let mut assign = vec![0i8; self.nvars as usize + 1];
        dpll(&self.clauses, &mut assign)
    }
}

fn value(assign: &[i8], l: Lit) -> i8 {
    let v = assign[l.unsigned_abs() as usize];
    if l > 0 {
        v
    } else {
        -v
    }
}

fn dpll(clauses: &[Vec<Lit>], assign: &mut Vec<i8>) -> bool {
    loop {
        let mut changed = false;
        for c in clauses {
            let mut unassigned = None;
            let mut count = 0;
            let mut sat = false;
            for &l in c {
                match value(assign, l) {
                    1 => {
                        sat = true;
                        break;
                    }
                    0 => {
                        count += 1;
                        unassigned = Some(l);
                    }
                    _ => {}
                }
            }
            if sat {
                continue;
            }
            match (count, unassigned) {
                (0, _) => return false,
                (1, Some(l)) => {
                    assign[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let branch = clauses.iter().find_map(|c| {
        if c.iter().any(|&l| value(assign, l) == 1) {
            None
        } else {
            c.iter().copied().find(|&l| value(assign, l) == 0)
        }
    });
    let Some(l) = branch else { return true };
    let var = l.unsigned_abs() as usize;
    for v in [1i8, -1] {
        let saved = assign.clone();
        assign[var] = v;
        if dpll(clauses, assign) {
            return true;
        }
        *assign = saved;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn f(s: &str) -> QFFormula {
        parse_formula(s).unwrap()
    }

    /// Independent oracle: enumerate all assignments of the atoms.
    fn truth_table_entails(hyps: &[QFFormula], goal: &QFFormula) -> bool {
        let mut atoms = BTreeSet::new();
        for h in hyps.iter().chain(std::iter::once(goal)) {
            atoms.extend(h.atoms());
        }
        let atoms: Vec<_> = atoms.into_iter().collect();
        (0u32..(1 << atoms.len())).all(|mask| {
            let mut look = |p: &crate::syntax::Sym, args: &[crate::syntax::Term]| {
                let a = QFFormula::Atom(p.clone(), args.to_vec());
                let k = atoms.iter().position(|x| *x == a).unwrap();
                mask & (1 << k) != 0
            };
            !hyps.iter().all(|h| h.eval_with(&mut look)) || goal.eval_with(&mut look)
        })
    }

    #[test]
    fn examples() {
        assert!(prop_entails(&[f("R(a)|R(b)"), f("!R(a)"), f("!R(b)")], &QFFormula::Bot));
        assert!(prop_entails(&[], &QFFormula::Top));
        assert!(!prop_entails(&[f("R(a)")], &f("R(b)")));
        assert!(!prop_entails(&[], &QFFormula::Bot));
        assert!(prop_entails(&[QFFormula::Bot], &f("R(a)")));
    }

    pub(crate) fn arb_formula(atoms: usize) -> impl Strategy<Value = QFFormula> {
        let leaf = prop_oneof![
            (0..atoms).prop_map(|k| QFFormula::atom(&format!("A{k}"), vec![])),
            Just(QFFormula::Top),
            Just(QFFormula::Bot),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(QFFormula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| QFFormula::and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| QFFormula::or(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn agrees_with_truth_table(hyps in prop::collection::vec(arb_formula(6), 0..4), goal in arb_formula(6)) {
            prop_assert_eq!(prop_entails(&hyps, &goal), truth_table_entails(&hyps, &goal));
        }

        #[test]
        fn reflexive(a in arb_formula(6)) {
            prop_assert!(prop_entails(std::slice::from_ref(&a), &a));
        }

        #[test]
        fn monotone_in_hypotheses(hyps in prop::collection::vec(arb_formula(5), 0..3), extra in arb_formula(5), goal in arb_formula(5)) {
            if prop_entails(&hyps, &goal) {
                let mut more = hyps.clone();
                more.push(extra);
                prop_assert!(prop_entails(&more, &goal));
            }
        }
    }
}
