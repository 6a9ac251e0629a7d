//! Concrete syntax for terms, formulas and theory files.
//!
//! Precedence, loosest first: `<->`, `->`, `|`, `&`, `!`. Binary connectives
//! associate to the right.

use crate::error::{Error, Result};
use crate::syntax::{is_variable_name, sym, QFFormula, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(usize),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    Slash,
    Not,
    And,
    Or,
    Imp,
    Iff,
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Tokenizes `text`, reporting positions relative to (`line`, `col`).
pub(crate) fn lex(text: &str, line: usize, col: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut l, mut c) = (line, col);
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let (sl, sc) = (l, c);
        let mut adv = 1;
        let tok = match ch {
            '\n' => {
                l += 1;
                c = 1;
                i += 1;
                continue;
            }
            ' ' | '\t' | '\r' => None,
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            '/' => Some(Tok::Slash),
            '!' | '~' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '-' if chars.get(i + 1) == Some(&'>') => {
                adv = 2;
                Some(Tok::Imp)
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                adv = 3;
                Some(Tok::Iff)
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                adv = j - i;
                Some(Tok::Num(s.parse().map_err(|_| Error::parse(sl, sc, "number too large"))?))
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                    j += 1;
                }
                adv = j - i;
                Some(Tok::Ident(chars[i..j].iter().collect()))
            }
            other => return Err(Error::parse(sl, sc, format!("unexpected character `{other}`"))),
        };
        if let Some(tok) = tok {
            out.push(Spanned { tok, line: sl, col: sc });
        }
        i += adv;
        c += adv;
    }
    Ok(out)
}

/// Maps a variable name to its context index.
pub type VarResolver<'a> = &'a dyn Fn(&str) -> Option<usize>;

/// `x<k>` denotes index `k`.
pub fn default_resolver(name: &str) -> Option<usize> {
    name.strip_prefix('x').filter(|_| is_variable_name(name)).and_then(|d| d.parse().ok())
}

pub(crate) struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    vars: VarResolver<'a>,
}

impl<'a> Parser<'a> {
    pub fn new(text: &str, line: usize, col: usize, vars: VarResolver<'a>) -> Result<Self> {
        let toks = lex(text, line, col)?;
        let end = text.lines().enumerate().last().map_or((line, col), |(k, s)| {
            (line + k, if k == 0 { col + s.chars().count() } else { s.chars().count() + 1 })
        });
        Ok(Parser { toks, pos: 0, end, vars })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col))
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        Error::parse(l, c, msg)
    }

    pub fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    pub fn number(&mut self, what: &str) -> Result<usize> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    pub fn formula(&mut self) -> Result<QFFormula> {
        let lhs = self.implication()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula()?;
            return Ok(QFFormula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<QFFormula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.implication()?;
            return Ok(QFFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<QFFormula> {
        let lhs = self.conjunction()?;
        if self.eat(&Tok::Or) {
            let rhs = self.disjunction()?;
            return Ok(QFFormula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<QFFormula> {
        let lhs = self.unary()?;
        if self.eat(&Tok::And) {
            let rhs = self.conjunction()?;
            return Ok(QFFormula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<QFFormula> {
        if self.eat(&Tok::Not) {
            return Ok(QFFormula::not(self.unary()?));
        }
        if self.eat(&Tok::LParen) {
            let inner = self.formula()?;
            self.expect(&Tok::RParen, "`)`")?;
            return Ok(inner);
        }
        let (l, c) = self.here();
        let name = self.ident("a formula")?;
        match name.as_str() {
            "true" => return Ok(QFFormula::Top),
            "false" => return Ok(QFFormula::Bot),
            _ => {}
        }
        if is_variable_name(&name) {
            return Err(Error::parse(l, c, format!("variable `{name}` used as a formula")));
        }
        let args = self.arguments()?;
        Ok(QFFormula::Atom(sym(&name), args))
    }

    fn arguments(&mut self) -> Result<Vec<Term>> {
        let mut args = Vec::new();
        if self.eat(&Tok::LParen)
            && !self.eat(&Tok::RParen) {
                loop {
                    args.push(self.term()?);
                    if self.eat(&Tok::RParen) {
                        break;
                    }
                    self.expect(&Tok::Comma, "`,` or `)`")?;
                }
            }
        Ok(args)
    }

    pub fn term(&mut self) -> Result<Term> {
        let (l, c) = self.here();
        let name = self.ident("a term")?;
        if is_variable_name(&name) {
            return (self.vars)(&name)
                .map(Term::Var)
                .ok_or_else(|| Error::parse(l, c, format!("variable `{name}` is not in scope")));
        }
        if matches!(name.as_str(), "true" | "false") {
            return Err(Error::parse(l, c, format!("`{name}` is not a term")));
        }
        let args = self.arguments()?;
        Ok(Term::App(sym(&name), args))
    }
}

pub fn parse_formula(text: &str) -> Result<QFFormula> {
    parse_formula_with(text, 1, 1, &default_resolver)
}

pub fn parse_formula_with(text: &str, line: usize, col: usize, vars: VarResolver<'_>) -> Result<QFFormula> {
    let mut p = Parser::new(text, line, col, vars)?;
    let phi = p.formula()?;
    p.finish()?;
    Ok(phi)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text, 1, 1, &default_resolver)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// A signature with universal axioms. Each axiom lives in the context given
/// by its free variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Theory {
    pub signature: Signature,
    pub axioms: Vec<QFFormula>,
}

/// Strips a trailing `#` comment.
pub(crate) fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

/// Leading whitespace width, as a 1-based column of the first token.
pub(crate) fn first_col(line: &str) -> usize {
    line.chars().take_while(|c| c.is_whitespace()).count() + 1
}

pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut th = Theory::default();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let start = first_col(body);
        let trimmed = body.trim_start();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = start + kw.chars().count() + 1;
        let sig_err = |e: Error| match e {
            Error::Signature(m) => Error::parse(line, start, m),
            other => other,
        };
        match kw {
            "pred" | "fun" => {
                let mut p = Parser::new(rest, line, rest_col, &default_resolver)?;
                let name = p.ident("a symbol name")?;
                p.expect(&Tok::Slash, "`/<arity>`")?;
                let arity = p.number("an arity")?;
                p.finish()?;
                if kw == "pred" {
                    th.signature.add_predicate(&name, arity).map_err(sig_err)?;
                } else {
                    th.signature.add_function(&name, arity).map_err(sig_err)?;
                }
            }
            "const" => {
                let mut p = Parser::new(rest, line, rest_col, &default_resolver)?;
                let name = p.ident("a constant name")?;
                p.finish()?;
                th.signature.add_function(&name, 0).map_err(sig_err)?;
            }
            "axiom" => {
                let phi = parse_formula_with(rest, line, rest_col, &default_resolver)?;
                th.signature.check_formula(&phi, phi.var_bound()).map_err(sig_err)?;
                th.axioms.push(phi);
            }
            other => {
                return Err(Error::parse(line, start, format!("unknown declaration `{other}`")));
            }
        }
    }
    Ok(th)
}

pub fn print_theory(th: &Theory) -> String {
    let mut out = String::new();
    for (f, a) in &th.signature.functions {
        if *a == 0 {
            out.push_str(&format!("const {f}\n"));
        } else {
            out.push_str(&format!("fun {f}/{a}\n"));
        }
    }
    for (p, a) in &th.signature.predicates {
        out.push_str(&format!("pred {p}/{a}\n"));
    }
    for ax in &th.axioms {
        out.push_str(&format!("axiom {ax}\n"));
    }
    out
}
