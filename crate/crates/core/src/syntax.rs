//! First-order terms and quantifier-free formulas over a finite signature.
//!
//! Variables are context indices: `Var(i)` is the `i`-th variable of the
//! ambient context, printed `x{i}`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type Sym = Arc<str>;

pub fn sym(s: &str) -> Sym {
    Arc::from(s)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub functions: Vec<(Sym, usize)>,
    pub predicates: Vec<(Sym, usize)>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Result<Self> {
        self.add_function(name, arity)?;
        Ok(self)
    }

    pub fn with_constant(self, name: &str) -> Result<Self> {
        self.with_function(name, 0)
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Result<Self> {
        self.add_predicate(name, arity)?;
        Ok(self)
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<()> {
        check_symbol_name(name)?;
        if self.function_arity(name).is_some() {
            return Err(Error::Signature(format!("duplicate function symbol `{name}`")));
        }
        self.functions.push((sym(name), arity));
        Ok(())
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<()> {
        check_symbol_name(name)?;
        if self.predicate_arity(name).is_some() {
            return Err(Error::Signature(format!("duplicate predicate symbol `{name}`")));
        }
        self.predicates.push((sym(name), arity));
        Ok(())
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.iter().find(|(n, _)| &**n == name).map(|(_, a)| *a)
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.iter().find(|(n, _)| &**n == name).map(|(_, a)| *a)
    }

    pub fn constants(&self) -> impl Iterator<Item = &Sym> {
        self.functions.iter().filter(|(_, a)| *a == 0).map(|(n, _)| n)
    }

    pub fn has_constants(&self) -> bool {
        self.constants().next().is_some()
    }

    /// Checks arities and that all variables are below `ctx`.
    pub fn check_term(&self, t: &Term, ctx: usize) -> Result<()> {
        match t {
            Term::Var(i) if *i < ctx => Ok(()),
            Term::Var(i) => Err(Error::Signature(format!("variable x{i} outside context of size {ctx}"))),
            Term::App(f, args) => match self.function_arity(f) {
                None => Err(Error::Signature(format!("undeclared function symbol `{f}`"))),
                Some(a) if a != args.len() => Err(Error::Signature(format!(
                    "`{f}` has arity {a}, applied to {} arguments",
                    args.len()
                ))),
                Some(_) => args.iter().try_for_each(|s| self.check_term(s, ctx)),
            },
        }
    }

    pub fn check_formula(&self, phi: &QFFormula, ctx: usize) -> Result<()> {
        match phi {
            QFFormula::Top | QFFormula::Bot => Ok(()),
            QFFormula::Atom(p, args) => match self.predicate_arity(p) {
                None => Err(Error::Signature(format!("undeclared predicate symbol `{p}`"))),
                Some(a) if a != args.len() => Err(Error::Signature(format!(
                    "`{p}` has arity {a}, applied to {} arguments",
                    args.len()
                ))),
                Some(_) => args.iter().try_for_each(|t| self.check_term(t, ctx)),
            },
            QFFormula::Not(a) => self.check_formula(a, ctx),
            QFFormula::And(a, b) | QFFormula::Or(a, b) => {
                self.check_formula(a, ctx)?;
                self.check_formula(b, ctx)
            }
        }
    }
}

/// Names of the form `x<digits>` or `y<digits>` are reserved for variables.
pub fn is_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('x') | Some('y'))
        && name.len() > 1
        && chars.all(|c| c.is_ascii_digit())
}

fn check_symbol_name(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    if !ok || is_variable_name(name) || matches!(name, "true" | "false" | "forall" | "exists") {
        return Err(Error::Signature(format!("`{name}` is not a valid symbol name")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(Sym, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Self {
        Term::Var(i)
    }

    pub fn constant(c: &str) -> Self {
        Term::App(sym(c), Vec::new())
    }

    pub fn app(f: &str, args: Vec<Term>) -> Self {
        Term::App(sym(f), args)
    }

    /// Variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    /// One past the largest variable index, 0 for closed terms.
    pub fn var_bound(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::App(_, args) => args.iter().map(Term::var_bound).max().unwrap_or(0),
        }
    }

    pub fn substitute(&self, sigma: &[Term]) -> Result<Term> {
        match self {
            Term::Var(i) => sigma.get(*i).cloned().ok_or_else(|| {
                Error::Substitution(format!("variable x{i} has no image among {} terms", sigma.len()))
            }),
            Term::App(f, args) => Ok(Term::App(
                f.clone(),
                args.iter().map(|a| a.substitute(sigma)).collect::<Result<_>>()?,
            )),
        }
    }

    pub fn shift(&self, by: usize) -> Term {
        match self {
            Term::Var(i) => Term::Var(i + by),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.shift(by)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(s, args) if args.is_empty() => write!(f, "{s}"),
            Term::App(s, args) => {
                write!(f, "{s}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QFFormula {
    Atom(Sym, Vec<Term>),
    Top,
    Bot,
    Not(Box<QFFormula>),
    And(Box<QFFormula>, Box<QFFormula>),
    Or(Box<QFFormula>, Box<QFFormula>),
}

impl QFFormula {
    pub fn atom(p: &str, args: Vec<Term>) -> Self {
        QFFormula::Atom(sym(p), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: QFFormula) -> Self {
        QFFormula::Not(Box::new(a))
    }

    pub fn and(a: QFFormula, b: QFFormula) -> Self {
        QFFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: QFFormula, b: QFFormula) -> Self {
        QFFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: QFFormula, b: QFFormula) -> Self {
        QFFormula::or(QFFormula::not(a), b)
    }

    pub fn iff(a: QFFormula, b: QFFormula) -> Self {
        QFFormula::and(QFFormula::implies(a.clone(), b.clone()), QFFormula::implies(b, a))
    }

    /// Right-nested conjunction; the empty list gives `Top`.
    pub fn conj(items: impl IntoIterator<Item = QFFormula>) -> Self {
        fold_right(items.into_iter().collect(), QFFormula::Top, QFFormula::and)
    }

    /// Right-nested disjunction; the empty list gives `Bot`.
    pub fn disj(items: impl IntoIterator<Item = QFFormula>) -> Self {
        fold_right(items.into_iter().collect(), QFFormula::Bot, QFFormula::or)
    }

    pub fn var_bound(&self) -> usize {
        match self {
            QFFormula::Top | QFFormula::Bot => 0,
            QFFormula::Atom(_, args) => args.iter().map(Term::var_bound).max().unwrap_or(0),
            QFFormula::Not(a) => a.var_bound(),
            QFFormula::And(a, b) | QFFormula::Or(a, b) => a.var_bound().max(b.var_bound()),
        }
    }

    /// Simultaneous substitution `Var(i) := sigma[i]`.
    ///
    /// `sigma` must cover every variable of `self`, and every term of `sigma`
    /// must live in a context of size `target_ctx`.
    pub fn substitute(&self, sigma: &[Term], target_ctx: usize) -> Result<QFFormula> {
        if let Some(t) = sigma.iter().find(|t| t.var_bound() > target_ctx) {
            return Err(Error::Substitution(format!(
                "term {t} is not over a context of size {target_ctx}"
            )));
        }
        self.subst_unchecked(sigma)
    }

    fn subst_unchecked(&self, sigma: &[Term]) -> Result<QFFormula> {
        Ok(match self {
            QFFormula::Top => QFFormula::Top,
            QFFormula::Bot => QFFormula::Bot,
            QFFormula::Atom(p, args) => QFFormula::Atom(
                p.clone(),
                args.iter().map(|a| a.substitute(sigma)).collect::<Result<_>>()?,
            ),
            QFFormula::Not(a) => QFFormula::not(a.subst_unchecked(sigma)?),
            QFFormula::And(a, b) => QFFormula::and(a.subst_unchecked(sigma)?, b.subst_unchecked(sigma)?),
            QFFormula::Or(a, b) => QFFormula::or(a.subst_unchecked(sigma)?, b.subst_unchecked(sigma)?),
        })
    }

    pub fn atoms(&self) -> BTreeSet<QFFormula> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<QFFormula>) {
        match self {
            QFFormula::Atom(..) => {
                out.insert(self.clone());
            }
            QFFormula::Top | QFFormula::Bot => {}
            QFFormula::Not(a) => a.collect_atoms(out),
            QFFormula::And(a, b) | QFFormula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Evaluates under an assignment to atoms.
    pub fn eval_with(&self, atom: &mut impl FnMut(&Sym, &[Term]) -> bool) -> bool {
        match self {
            QFFormula::Top => true,
            QFFormula::Bot => false,
            QFFormula::Atom(p, args) => atom(p, args),
            QFFormula::Not(a) => !a.eval_with(atom),
            QFFormula::And(a, b) => a.eval_with(atom) && b.eval_with(atom),
            QFFormula::Or(a, b) => a.eval_with(atom) || b.eval_with(atom),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            QFFormula::Or(..) => 1,
            QFFormula::And(..) => 2,
            _ => 3,
        }
    }
}

fn fold_right(mut items: Vec<QFFormula>, unit: QFFormula, op: fn(QFFormula, QFFormula) -> QFFormula) -> QFFormula {
    let Some(mut acc) = items.pop() else { return unit };
    while let Some(x) = items.pop() {
        acc = op(x, acc);
    }
    acc
}

impl fmt::Display for QFFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &QFFormula, min: u8) -> fmt::Result {
            if c.precedence() < min {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        match self {
            QFFormula::Top => write!(f, "true"),
            QFFormula::Bot => write!(f, "false"),
            QFFormula::Atom(p, args) if args.is_empty() => write!(f, "{p}"),
            QFFormula::Atom(p, args) => {
                write!(f, "{p}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            QFFormula::Not(a) => {
                write!(f, "!")?;
                child(f, a, 3)
            }
            // Both connectives associate to the right when parsed, so a
            // left operand of the same connective needs parentheses.
            QFFormula::And(a, b) => {
                child(f, a, 3)?;
                write!(f, " & ")?;
                child(f, b, 2)
            }
            QFFormula::Or(a, b) => {
                child(f, a, 2)?;
                write!(f, " | ")?;
                child(f, b, 1)
            }
        }
    }
}

/// Convenience over [`QFFormula::substitute`].
pub fn substitute(phi: &QFFormula, sigma: &[Term], target_ctx: usize) -> Result<QFFormula> {
    phi.substitute(sigma, target_ctx)
}
