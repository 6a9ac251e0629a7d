//! Disjunctive and conjunctive normal forms over an arbitrary leaf type.
//!
//! Forms are not minimized. Literals inside a clause, and clauses inside a
//! form, are sorted by printed form and deduplicated.

use std::fmt;

use crate::syntax::QFFormula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NfKind {
    Dnf,
    Cnf,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal<L> {
    pub positive: bool,
    pub leaf: L,
}

impl<L: fmt::Display> fmt::Display for Literal<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.leaf)
        } else {
            write!(f, "!{}", self.leaf)
        }
    }
}

/// Under `Dnf` the clauses are conjunctions joined by disjunction; under
/// `Cnf` the other way round.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm<L> {
    pub kind: NfKind,
    pub clauses: Vec<Vec<Literal<L>>>,
}

/// A read-only view of a Boolean expression tree.
pub enum BoolView<'a, T: BoolTree + ?Sized> {
    Leaf(&'a T::Leaf),
    Top,
    Bot,
    Not(&'a T),
    And(&'a T, &'a T),
    Or(&'a T, &'a T),
}

pub trait BoolTree {
    type Leaf: Clone + fmt::Display;
    fn view(&self) -> BoolView<'_, Self>;
}

impl BoolTree for QFFormula {
    type Leaf = QFFormula;
    fn view(&self) -> BoolView<'_, Self> {
        match self {
            QFFormula::Atom(..) => BoolView::Leaf(self),
            QFFormula::Top => BoolView::Top,
            QFFormula::Bot => BoolView::Bot,
            QFFormula::Not(a) => BoolView::Not(a),
            QFFormula::And(a, b) => BoolView::And(a, b),
            QFFormula::Or(a, b) => BoolView::Or(a, b),
        }
    }
}

pub fn normal_form<T: BoolTree>(e: &T, kind: NfKind) -> NormalForm<T::Leaf> {
    let raw = match kind {
        NfKind::Dnf => dnf(e, true),
        // CNF(e) is DNF(!e) with every literal flipped.
        NfKind::Cnf => dnf(e, false)
            .into_iter()
            .map(|c| c.into_iter().map(|l| Literal { positive: !l.positive, leaf: l.leaf }).collect())
            .collect(),
    };
    canonical(kind, raw)
}

fn dnf<T: BoolTree>(e: &T, positive: bool) -> Vec<Vec<Literal<T::Leaf>>> {
    match (e.view(), positive) {
        (BoolView::Leaf(l), p) => vec![vec![Literal { positive: p, leaf: l.clone() }]],
        (BoolView::Top, true) | (BoolView::Bot, false) => vec![vec![]],
        (BoolView::Top, false) | (BoolView::Bot, true) => vec![],
        (BoolView::Not(a), p) => dnf(a, !p),
        (BoolView::Or(a, b), true) | (BoolView::And(a, b), false) => {
            let mut out = dnf(a, positive);
            out.extend(dnf(b, positive));
            out
        }
        (BoolView::And(a, b), true) | (BoolView::Or(a, b), false) => {
            let (da, db) = (dnf(a, positive), dnf(b, positive));
            let mut out = Vec::with_capacity(da.len() * db.len());
            for x in &da {
                for y in &db {
                    out.push(x.iter().chain(y).cloned().collect());
                }
            }
            out
        }
    }
}

fn canonical<L: Clone + fmt::Display>(kind: NfKind, raw: Vec<Vec<Literal<L>>>) -> NormalForm<L> {
    let mut keyed: Vec<(String, Vec<Literal<L>>)> = raw
        .into_iter()
        .map(|c| {
            let mut lits: Vec<(String, Literal<L>)> = c.into_iter().map(|l| (l.to_string(), l)).collect();
            lits.sort_by(|a, b| a.0.cmp(&b.0));
            lits.dedup_by(|a, b| a.0 == b.0);
            let key = lits.iter().map(|(s, _)| s.as_str()).collect::<Vec<_>>().join("\u{1}");
            (key, lits.into_iter().map(|(_, l)| l).collect())
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    NormalForm { kind, clauses: keyed.into_iter().map(|(_, c)| c).collect() }
}

impl<L> NormalForm<L> {
    pub fn eval(&self, val: &mut impl FnMut(&L) -> bool) -> bool {
        let mut lit = |l: &Literal<L>| val(&l.leaf) == l.positive;
        match self.kind {
            NfKind::Dnf => self.clauses.iter().any(|c| c.iter().all(&mut lit)),
            NfKind::Cnf => self.clauses.iter().all(|c| c.iter().any(&mut lit)),
        }
    }
}

impl NormalForm<QFFormula> {
    pub fn to_formula(&self) -> QFFormula {
        let lit = |l: &Literal<QFFormula>| {
            if l.positive {
                l.leaf.clone()
            } else {
                QFFormula::not(l.leaf.clone())
            }
        };
        match self.kind {
            NfKind::Dnf => QFFormula::disj(self.clauses.iter().map(|c| QFFormula::conj(c.iter().map(lit)))),
            NfKind::Cnf => QFFormula::conj(self.clauses.iter().map(|c| QFFormula::disj(c.iter().map(lit)))),
        }
    }
}

impl<L: fmt::Display> fmt::Display for NormalForm<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (inner, outer, empty_outer, empty_inner) = match self.kind {
            NfKind::Dnf => (" & ", " | ", "false", "true"),
            NfKind::Cnf => (" | ", " & ", "true", "false"),
        };
        if self.clauses.is_empty() {
            return write!(f, "{empty_outer}");
        }
        for (k, c) in self.clauses.iter().enumerate() {
            if k > 0 {
                write!(f, "{outer}")?;
            }
            let paren = c.len() > 1 && self.clauses.len() > 1;
            if paren {
                write!(f, "(")?;
            }
            if c.is_empty() {
                write!(f, "{empty_inner}")?;
            }
            for (j, l) in c.iter().enumerate() {
                if j > 0 {
                    write!(f, "{inner}")?;
                }
                write!(f, "{l}")?;
            }
            if paren {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}
