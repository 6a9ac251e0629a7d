use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::doctrine::{PointSet, Tuple};
use crate::error::{Error, Result};
use crate::parse::Theory;
use crate::syntax::{sym, QFFormula, Signature, Sym, Term};

/// A finite first-order structure on the carrier `{0, .., size-1}`.
///
/// Tables are indexed by argument tuples read as base-`size` numerals, most
/// significant argument first. Labels are printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureModel {
    pub size: usize,
    pub functions: BTreeMap<Sym, (usize, Vec<usize>)>,
    pub predicates: BTreeMap<Sym, (usize, Vec<bool>)>,
}

fn index_of(size: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

/// All tuples in `{0..size}^n`, lexicographically.
pub fn all_tuples(size: usize, n: usize) -> Vec<Tuple> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size).map(move |a| {
                    let mut u = t.clone();
                    u.push(a);
                    u
                })
            })
            .collect();
    }
    out
}

impl StructureModel {
    pub fn eval_term(&self, t: &Term, v: &[usize]) -> usize {
        match t {
            Term::Var(i) => v[*i],
            Term::App(f, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.eval_term(a, v)).collect();
                let (_, table) = &self.functions[f];
                table[index_of(self.size, &vals)]
            }
        }
    }

    pub fn holds(&self, phi: &QFFormula, v: &[usize]) -> bool {
        phi.eval_with(&mut |p, args| {
            let vals: Vec<usize> = args.iter().map(|a| self.eval_term(a, v)).collect();
            self.predicates[p].1[index_of(self.size, &vals)]
        })
    }

    /// The set of `n`-tuples satisfying `phi`.
    pub fn extension(&self, n: usize, phi: &QFFormula) -> PointSet {
        PointSet(all_tuples(self.size, n).into_iter().filter(|v| self.holds(phi, v)).collect())
    }

    pub fn satisfies_axiom(&self, phi: &QFFormula) -> bool {
        all_tuples(self.size, phi.var_bound()).iter().all(|v| self.holds(phi, v))
    }

    pub fn satisfies(&self, theory: &Theory) -> bool {
        theory.axioms.iter().all(|a| self.satisfies_axiom(a))
    }

    pub fn check_signature(&self, sig: &Signature) -> Result<()> {
        for (f, a) in &sig.functions {
            match self.functions.get(f) {
                Some((ar, t)) if ar == a && t.len() == self.size.pow(*a as u32) && t.iter().all(|&v| v < self.size) => {}
                _ => return Err(Error::Invalid(format!("model does not interpret function `{f}`/{a}"))),
            }
        }
        for (p, a) in &sig.predicates {
            match self.predicates.get(p) {
                Some((ar, t)) if ar == a && t.len() == self.size.pow(*a as u32) => {}
                _ => return Err(Error::Invalid(format!("model does not interpret predicate `{p}`/{a}"))),
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        if self.functions.values().all(|(a, _)| *a > 0) && self.size == 0 && self.predicates.values().all(|(a, _)| *a > 0) {
            return json!({ "carrier": 0 });
        }
        let mut funs = serde_json::Map::new();
        for (f, (a, table)) in &self.functions {
            let rows: Vec<Value> = all_tuples(self.size, *a)
                .iter()
                .map(|args| {
                    let labelled: Vec<usize> = args.iter().map(|x| x + 1).collect();
                    json!([labelled, table[index_of(self.size, args)] + 1])
                })
                .collect();
            funs.insert(f.to_string(), rows.into());
        }
        let mut preds = serde_json::Map::new();
        for (p, (a, table)) in &self.predicates {
            let rows: Vec<Value> = all_tuples(self.size, *a)
                .iter()
                .filter(|args| table[index_of(self.size, args)])
                .map(|args| json!(args.iter().map(|x| x + 1).collect::<Vec<_>>()))
                .collect();
            preds.insert(p.to_string(), rows.into());
        }
        json!({ "carrier": self.size, "functions": funs, "predicates": preds })
    }

    /// Reads the model format; symbols of `sig` missing from the file are
    /// rejected, predicates default to empty.
    pub fn from_json(v: &Value, sig: &Signature) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("model JSON: {m}"));
        let size = v.get("carrier").and_then(Value::as_u64).ok_or_else(|| bad("missing `carrier`"))? as usize;
        let label = |x: &Value| -> Result<usize> {
            let k = x.as_u64().ok_or_else(|| bad("labels must be integers"))? as usize;
            if k == 0 || k > size {
                return Err(bad(&format!("label {k} outside 1..{size}")));
            }
            Ok(k - 1)
        };
        let mut functions = BTreeMap::new();
        for (f, a) in &sig.functions {
            let mut table = vec![usize::MAX; size.pow(*a as u32)];
            let rows = v.pointer(&format!("/functions/{f}")).and_then(Value::as_array);
            for row in rows.into_iter().flatten() {
                let args = row.get(0).and_then(Value::as_array).ok_or_else(|| bad("function rows are [args, value]"))?;
                let args: Vec<usize> = args.iter().map(label).collect::<Result<_>>()?;
                if args.len() != *a {
                    return Err(bad(&format!("row of `{f}` has the wrong arity")));
                }
                table[index_of(size, &args)] = label(row.get(1).ok_or_else(|| bad("missing value"))?)?;
            }
            if table.contains(&usize::MAX) {
                return Err(bad(&format!("function `{f}` is not total")));
            }
            functions.insert(f.clone(), (*a, table));
        }
        let mut predicates = BTreeMap::new();
        for (p, a) in &sig.predicates {
            let mut table = vec![false; size.pow(*a as u32)];
            let rows = v.pointer(&format!("/predicates/{p}")).and_then(Value::as_array);
            for row in rows.into_iter().flatten() {
                let args: Vec<usize> = row.as_array().ok_or_else(|| bad("predicate rows are tuples"))?.iter().map(label).collect::<Result<_>>()?;
                if args.len() != *a {
                    return Err(bad(&format!("row of `{p}` has the wrong arity")));
                }
                table[index_of(size, &args)] = true;
            }
            predicates.insert(p.clone(), (*a, table));
        }
        Ok(StructureModel { size, functions, predicates })
    }
}

impl std::fmt::Display for StructureModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// Every model of `theory` with carrier size at most `bound`, smallest first.
///
/// The empty carrier is included when the signature has no constants.
pub struct ModelIter<'a> {
    theory: &'a Theory,
    bound: usize,
    size: usize,
    radices: Vec<usize>,
    digits: Vec<usize>,
    fresh: bool,
}

pub fn enumerate_models(theory: &Theory, bound: usize) -> ModelIter<'_> {
    let mut it = ModelIter { theory, bound, size: 0, radices: Vec::new(), digits: Vec::new(), fresh: true };
    it.reset_size(if theory.signature.has_constants() { 1 } else { 0 });
    it
}

impl<'a> ModelIter<'a> {
    fn reset_size(&mut self, size: usize) {
        self.size = size;
        let sig = &self.theory.signature;
        self.radices.clear();
        for (_, a) in &sig.functions {
            self.radices.extend(std::iter::repeat_n(size, size.pow(*a as u32)));
        }
        for (_, a) in &sig.predicates {
            self.radices.extend(std::iter::repeat_n(2, size.pow(*a as u32)));
        }
        self.digits = vec![0; self.radices.len()];
        self.fresh = true;
    }

    fn advance(&mut self) -> bool {
        if self.fresh {
            self.fresh = false;
            return true;
        }
        for k in (0..self.digits.len()).rev() {
            self.digits[k] += 1;
            if self.digits[k] < self.radices[k] {
                return true;
            }
            self.digits[k] = 0;
        }
        false
    }

    fn current(&self) -> StructureModel {
        let sig = &self.theory.signature;
        let mut pos = 0;
        let mut functions = BTreeMap::new();
        for (f, a) in &sig.functions {
            let n = self.size.pow(*a as u32);
            functions.insert(f.clone(), (*a, self.digits[pos..pos + n].to_vec()));
            pos += n;
        }
        let mut predicates = BTreeMap::new();
        for (p, a) in &sig.predicates {
            let n = self.size.pow(*a as u32);
            predicates.insert(p.clone(), (*a, self.digits[pos..pos + n].iter().map(|&d| d == 1).collect()));
            pos += n;
        }
        StructureModel { size: self.size, functions, predicates }
    }
}

impl Iterator for ModelIter<'_> {
    type Item = StructureModel;

    fn next(&mut self) -> Option<StructureModel> {
        loop {
            if self.size > self.bound {
                return None;
            }
            if self.advance() {
                let m = self.current();
                if m.satisfies(self.theory) {
                    return Some(m);
                }
            } else {
                let next = self.size + 1;
                self.reset_size(next);
            }
        }
    }
}

/// A structure given by sparse JSON-like data, for tests and fixtures.
pub fn structure(size: usize, functions: &[(&str, usize, Vec<usize>)], predicates: &[(&str, usize, Vec<bool>)]) -> StructureModel {
    StructureModel {
        size,
        functions: functions.iter().map(|(f, a, t)| (sym(f), (*a, t.clone()))).collect(),
        predicates: predicates.iter().map(|(p, a, t)| (sym(p), (*a, t.clone()))).collect(),
    }
}
