//! File formats: sequent files, witness JSON and Free₁ expressions over the
//! syntactic doctrine.
//!
//! A sequent file has one `context <n>` line and any number of
//! `lhs|rhs forall|exists <k>: <formula>` lines. Formula variables
//! `x0..x(n+k-1)` list the variables of `S` first.

use std::cell::RefCell;
use std::fmt;

use serde_json::{json, Value};

use crate::category::CtxMor;
use crate::doctrine::{ConstAdjoined, Doctrine, KMor, SyntacticDoctrine};
use crate::error::{Error, Result};
use crate::filters::{MixedSequent, Witness};
use crate::free1::{self, Free1Element, Generator};
use crate::parse::{default_resolver, first_col, parse_term, strip_comment, Parser, Tok};
use crate::syntax::{is_variable_name, QFFormula, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quant {
    Forall,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequentLine {
    pub side: Side,
    pub quant: Quant,
    pub bound: usize,
    pub body: QFFormula,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SequentFile {
    pub context: usize,
    pub lines: Vec<SequentLine>,
}

pub type SynElem = free1::Elem<SyntacticDoctrine>;
pub type SynWitness = Witness<KMor<usize, CtxMor>>;

pub fn parse_sequent(text: &str) -> Result<SequentFile> {
    let mut context = None;
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let (ln, col) = (k + 1, first_col(line));
        let mut p = Parser::new(line.trim_start(), ln, col, &default_resolver)?;
        let head = p.ident("`context`, `lhs` or `rhs`")?;
        let side = match head.as_str() {
            "context" => {
                if context.is_some() {
                    return Err(Error::parse(ln, col, "duplicate `context` line"));
                }
                context = Some(p.number("the size of the context")?);
                p.finish()?;
                continue;
            }
            "lhs" => Side::Lhs,
            "rhs" => Side::Rhs,
            other => return Err(Error::parse(ln, col, format!("unknown directive `{other}`"))),
        };
        let quant = match p.ident("`forall` or `exists`")?.as_str() {
            "forall" => Quant::Forall,
            "exists" => Quant::Exists,
            other => return Err(Error::parse(ln, col, format!("expected `forall` or `exists`, found `{other}`"))),
        };
        let bound = p.number("the size of the bound context")?;
        p.expect(&Tok::Colon, "`:`")?;
        let body = p.formula()?;
        p.finish()?;
        lines.push(SequentLine { side, quant, bound, body });
    }
    let file = SequentFile { context: context.unwrap_or(0), lines };
    for l in &file.lines {
        if l.body.var_bound() > file.context + l.bound {
            return Err(Error::Mismatch(format!("{} uses a variable outside context {}", l.body, file.context + l.bound)));
        }
    }
    Ok(file)
}

impl fmt::Display for SequentFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "context {}", self.context)?;
        for l in &self.lines {
            let side = if l.side == Side::Lhs { "lhs" } else { "rhs" };
            let q = if l.quant == Quant::Forall { "forall" } else { "exists" };
            writeln!(f, "{side} {q} {}: {}", l.bound, l.body)?;
        }
        Ok(())
    }
}

impl SequentFile {
    pub fn check(&self, sig: &Signature) -> Result<()> {
        self.lines.iter().try_for_each(|l| sig.check_formula(&l.body, self.context + l.bound))
    }

    /// The sequent at `S` over the doctrine with a constant of type `S`.
    pub fn to_mixed<'a>(&self, _ds: &ConstAdjoined<'a, SyntacticDoctrine>) -> MixedSequent<ConstAdjoined<'a, SyntacticDoctrine>> {
        let mut seq = MixedSequent::default();
        for l in &self.lines {
            let slot = match (l.side, l.quant) {
                (Side::Lhs, Quant::Forall) => &mut seq.forall_prem,
                (Side::Lhs, Quant::Exists) => &mut seq.exists_prem,
                (Side::Rhs, Quant::Forall) => &mut seq.forall_concl,
                (Side::Rhs, Quant::Exists) => &mut seq.exists_concl,
            };
            slot.push((l.bound, l.body.clone()));
        }
        seq
    }

    /// The conjunction of the left side and the disjunction of the right,
    /// with `∃γ` written `¬∀¬γ`.
    pub fn to_free1(&self, d: &SyntacticDoctrine) -> (SynElem, SynElem) {
        let item = |l: &SequentLine| -> SynElem {
            let n = self.context;
            match l.quant {
                Quant::Forall => Free1Element::Gen(Generator { base: n, bound: l.bound, body: l.body.clone() }),
                Quant::Exists => {
                    let body = d.neg(&(n + l.bound), &l.body);
                    Free1Element::not(Free1Element::Gen(Generator { base: n, bound: l.bound, body }))
                }
            }
        };
        let side = |s: Side| self.lines.iter().filter(move |l| l.side == s).map(item);
        let lhs = side(Side::Lhs).reduce(Free1Element::and).unwrap_or(Free1Element::Top);
        let rhs = side(Side::Rhs).reduce(Free1Element::or).unwrap_or(Free1Element::Bot);
        (lhs, rhs)
    }
}

/// `{"n", "picks", "terms", "n_prime", "picks_ex", "terms_ex"}`, each
/// morphism written as its list of component terms.
pub fn witness_to_json(w: &SynWitness) -> Value {
    let terms = |ms: &[KMor<usize, CtxMor>]| -> Vec<Vec<String>> {
        ms.iter().map(|m| m.inner.comps.iter().map(|t| t.to_string()).collect()).collect()
    };
    json!({
        "n": w.n,
        "picks": w.picks,
        "terms": terms(&w.morphisms),
        "n_prime": w.n_prime,
        "picks_ex": w.picks_ex,
        "terms_ex": terms(&w.morphisms_ex),
    })
}

/// Reads a witness for `seq`; terms live in context `S × C` where `C` is the
/// product of the sequent's context factors.
pub fn witness_from_json(
    v: &Value,
    ds: &ConstAdjoined<'_, SyntacticDoctrine>,
    seq: &MixedSequent<ConstAdjoined<'_, SyntacticDoctrine>>,
) -> Result<SynWitness> {
    let bad = |m: &str| Error::Invalid(format!("witness JSON: {m}"));
    let count = |key: &str| -> Result<usize> {
        match v.get(key) {
            None => Ok(0),
            Some(x) => x.as_u64().map(|k| k as usize).ok_or_else(|| bad(&format!("`{key}` must be an integer"))),
        }
    };
    let picks = |key: &str| -> Result<Vec<usize>> {
        let Some(arr) = v.get(key) else { return Ok(Vec::new()) };
        let arr = arr.as_array().ok_or_else(|| bad(&format!("`{key}` must be a list")))?;
        arr.iter().map(|p| p.as_u64().map(|k| k as usize).ok_or_else(|| bad("picks must be integers"))).collect()
    };
    let c: usize = seq.context_factors().iter().sum();
    let source = ds.s + c;
    let mors = |key: &str| -> Result<Vec<KMor<usize, CtxMor>>> {
        let Some(arr) = v.get(key) else { return Ok(Vec::new()) };
        let arr = arr.as_array().ok_or_else(|| bad(&format!("`{key}` must be a list")))?;
        arr.iter()
            .map(|row| {
                let row = row.as_array().ok_or_else(|| bad("each morphism is a list of terms"))?;
                let comps = row
                    .iter()
                    .map(|t| {
                        let t = parse_term(t.as_str().ok_or_else(|| bad("terms must be strings"))?)?;
                        ds.base.theory.signature.check_term(&t, source)?;
                        Ok(t)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(KMor { source: c, inner: CtxMor::new(source, comps)? })
            })
            .collect()
    };
    let w = Witness {
        n: count("n")?,
        picks: picks("picks")?,
        morphisms: mors("terms")?,
        n_prime: count("n_prime")?,
        picks_ex: picks("picks_ex")?,
        morphisms_ex: mors("terms_ex")?,
    };
    if w.picks.len() != w.n || w.morphisms.len() != w.n {
        return Err(bad("`n` must match the lengths of `picks` and `terms`"));
    }
    if w.picks_ex.len() != w.n_prime || w.morphisms_ex.len() != w.n_prime {
        return Err(bad("`n_prime` must match the lengths of `picks_ex` and `terms_ex`"));
    }
    Ok(w)
}

/// Parses a Boolean combination of generators `forall y1 .. yk. φ` over
/// context `n`. A generator body extends as far as possible, so generators
/// inside a compound expression need parentheses.
pub fn parse_free1(text: &str, n: usize, sig: &Signature) -> Result<SynElem> {
    let scope: RefCell<Vec<String>> = RefCell::new(Vec::new());
    let resolve = |name: &str| -> Option<usize> {
        if let Some(i) = scope.borrow().iter().position(|y| y == name) {
            return Some(n + i);
        }
        default_resolver(name).filter(|&i| i < n)
    };
    let mut p = Parser::new(text, 1, 1, &resolve)?;
    let e = Free1Parser { p: &mut p, n, scope: &scope, sig }.iff()?;
    p.finish()?;
    Ok(e)
}

struct Free1Parser<'p, 'a> {
    p: &'p mut Parser<'a>,
    n: usize,
    scope: &'p RefCell<Vec<String>>,
    sig: &'p Signature,
}

impl Free1Parser<'_, '_> {
    fn iff(&mut self) -> Result<SynElem> {
        let a = self.imp()?;
        if self.p.eat(&Tok::Iff) {
            let b = self.iff()?;
            let (na, nb) = (Free1Element::not(a.clone()), Free1Element::not(b.clone()));
            return Ok(Free1Element::and(Free1Element::or(na, b), Free1Element::or(nb, a)));
        }
        Ok(a)
    }

    fn imp(&mut self) -> Result<SynElem> {
        let a = self.or()?;
        if self.p.eat(&Tok::Imp) {
            return Ok(Free1Element::or(Free1Element::not(a), self.imp()?));
        }
        Ok(a)
    }

    fn or(&mut self) -> Result<SynElem> {
        let a = self.and()?;
        if self.p.eat(&Tok::Or) {
            return Ok(Free1Element::or(a, self.or()?));
        }
        Ok(a)
    }

    fn and(&mut self) -> Result<SynElem> {
        let a = self.unary()?;
        if self.p.eat(&Tok::And) {
            return Ok(Free1Element::and(a, self.and()?));
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<SynElem> {
        if self.p.eat(&Tok::Not) {
            return Ok(Free1Element::not(self.unary()?));
        }
        if self.p.eat(&Tok::LParen) {
            let e = self.iff()?;
            self.p.expect(&Tok::RParen, "`)`")?;
            return Ok(e);
        }
        let (l, c) = self.p.here();
        match self.p.bump() {
            Some(Tok::Ident(w)) if w == "true" => Ok(Free1Element::Top),
            Some(Tok::Ident(w)) if w == "false" => Ok(Free1Element::Bot),
            Some(Tok::Ident(w)) if w == "forall" => self.generator(),
            _ => Err(Error::parse(l, c, "expected `forall`, `true`, `false`, `!` or `(`")),
        }
    }

    fn generator(&mut self) -> Result<SynElem> {
        let mut names = Vec::new();
        while !self.p.eat(&Tok::Dot) {
            let (l, c) = self.p.here();
            let y = self.p.ident("a bound variable or `.`")?;
            if !is_variable_name(&y) || default_resolver(&y).is_some_and(|i| i < self.n) || names.contains(&y) {
                return Err(Error::parse(l, c, format!("`{y}` cannot be bound here")));
            }
            names.push(y);
        }
        let k = names.len();
        *self.scope.borrow_mut() = names;
        let body = self.p.formula();
        self.scope.borrow_mut().clear();
        let body = body?;
        self.sig.check_formula(&body, self.n + k)?;
        Ok(Free1Element::Gen(Generator { base: self.n, bound: k, body }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doctrine::add_constant;
    use crate::filters::check_witness;
    use crate::parse::{parse_formula, parse_theory};

    fn fix_ab() -> SyntacticDoctrine {
        SyntacticDoctrine::new(parse_theory("const a\nconst b\npred R/1\naxiom R(a)|R(b)").unwrap(), 2, 2)
    }

    #[test]
    fn sequent_round_trip() {
        let text = "context 1\nlhs forall 1: R(x1) # comment\n\nrhs exists 2: R(x0) & !R(x2)\n";
        let s = parse_sequent(text).unwrap();
        assert_eq!(s.context, 1);
        assert_eq!(s.lines.len(), 2);
        assert_eq!(parse_sequent(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn sequent_errors() {
        assert!(matches!(parse_sequent("context 0\nlhs forall 1 R(x0)"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_sequent("context 0\ncontext 1").is_err());
        assert!(parse_sequent("lhs forall 1: R(x1)").is_err());
        assert!(parse_sequent("middle forall 1: R(x0)").is_err());
    }

    #[test]
    fn witness_json_round_trip() {
        let d = fix_ab();
        let ds = add_constant(&d, 0);
        let s = parse_sequent("lhs forall 1: !R(x0)").unwrap();
        let seq = s.to_mixed(&ds);
        let v = json!({"n": 2, "picks": [1, 1], "terms": [["a"], ["b"]]});
        let w = witness_from_json(&v, &ds, &seq).unwrap();
        assert!(check_witness(&ds, &seq, &w).unwrap());
        assert_eq!(witness_from_json(&witness_to_json(&w), &ds, &seq).unwrap(), w);
        assert!(witness_from_json(&json!({"n": 1, "picks": [1], "terms": [["c"]]}), &ds, &seq).is_err());
        assert!(witness_from_json(&json!({"n": 2, "picks": [1], "terms": [["a"]]}), &ds, &seq).is_err());
    }

    #[test]
    fn free1_expressions() {
        let d = fix_ab();
        let sig = &d.theory.signature;
        let g = parse_free1("forall y1. R(y1)", 0, sig).unwrap();
        assert_eq!(g.to_string(), "forall y1. R(y1)");
        let e = parse_free1("(forall y1. R(y1)) & !(forall y1 y2. R(y1) | R(y2))", 0, sig).unwrap();
        assert_eq!(parse_free1(&e.to_string(), 0, sig).unwrap(), e);
        let h = parse_free1("forall y1. R(x0) & R(y1)", 1, sig).unwrap();
        let Free1Element::Gen(gen) = &h else { panic!() };
        assert_eq!(gen.body, parse_formula("R(x0) & R(x1)").unwrap());
        assert!(parse_free1("forall y1. R(x1)", 1, sig).is_err());
        assert!(parse_free1("forall x0. R(x0)", 1, sig).is_err());
        assert!(parse_free1("forall y1. S(y1)", 0, sig).is_err());
    }

    #[test]
    fn exists_lines_become_negated_generators() {
        let d = fix_ab();
        let s = parse_sequent("rhs exists 1: R(x0)").unwrap();
        let (l, r) = s.to_free1(&d);
        assert_eq!(l, Free1Element::Top);
        assert_eq!(r.to_string(), "!(forall y1. !R(y1))");
    }
}
