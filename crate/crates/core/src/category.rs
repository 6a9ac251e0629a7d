//! Base categories with finite products: contexts with term tuples, and
//! finite meet-semilattices.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::syntax::{Signature, Term};

/// A morphism `source -> comps.len()` in the category of contexts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CtxMor {
    pub source: usize,
    pub comps: Vec<Term>,
}

impl CtxMor {
    pub fn new(source: usize, comps: Vec<Term>) -> Result<Self> {
        if let Some(t) = comps.iter().find(|t| t.var_bound() > source) {
            return Err(Error::Mismatch(format!("component {t} is not over a context of size {source}")));
        }
        Ok(CtxMor { source, comps })
    }

    pub fn target(&self) -> usize {
        self.comps.len()
    }

    pub fn identity(n: usize) -> Self {
        CtxMor { source: n, comps: (0..n).map(Term::Var).collect() }
    }

    /// `n + m -> n`, selecting the first `n` variables.
    pub fn pr1(n: usize, m: usize) -> Self {
        CtxMor { source: n + m, comps: (0..n).map(Term::Var).collect() }
    }

    /// `n + m -> m`, selecting the last `m` variables.
    pub fn pr2(n: usize, m: usize) -> Self {
        CtxMor { source: n + m, comps: (n..n + m).map(Term::Var).collect() }
    }

    pub fn pair(f: &CtxMor, g: &CtxMor) -> Result<Self> {
        if f.source != g.source {
            return Err(Error::Mismatch(format!("pairing morphisms from {} and {}", f.source, g.source)));
        }
        Ok(CtxMor { source: f.source, comps: f.comps.iter().chain(&g.comps).cloned().collect() })
    }

    /// `self ∘ f`: substitutes `f`'s components into `self`'s.
    pub fn compose(&self, f: &CtxMor) -> Result<Self> {
        if f.target() != self.source {
            return Err(Error::Mismatch(format!(
                "composing {} -> {} after {} -> {}",
                self.source,
                self.target(),
                f.source,
                f.target()
            )));
        }
        Ok(CtxMor {
            source: f.source,
            comps: self.comps.iter().map(|t| t.substitute(&f.comps)).collect::<Result<_>>()?,
        })
    }

    pub fn depth(&self) -> usize {
        self.comps.iter().map(Term::depth).max().unwrap_or(0)
    }
}

impl fmt::Display for CtxMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, t) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// All terms over `ctx` variables of depth at most `depth`, ordered by depth
/// and then by printed form.
pub fn terms_up_to(sig: &Signature, ctx: usize, depth: usize) -> Vec<Term> {
    let mut all: Vec<Term> = (0..ctx).map(Term::Var).collect();
    all.extend(sig.constants().map(|c| Term::App(c.clone(), Vec::new())));
    let mut seen: HashSet<Term> = all.iter().cloned().collect();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (f, arity) in sig.functions.iter().filter(|(_, a)| *a > 0) {
            for args in itertools::Itertools::multi_cartesian_product((0..*arity).map(|_| all.iter().cloned())) {
                let t = Term::App(f.clone(), args);
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next);
    }
    let mut keyed: Vec<(usize, String, Term)> = all.into_iter().map(|t| (t.depth(), t.to_string(), t)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, t)| t).collect()
}

/// All morphisms `x -> y` whose components have depth at most `depth`,
/// ordered by maximum depth, then by printed form.
pub fn enumerate_morphisms(sig: &Signature, x: usize, y: usize, depth: usize) -> Vec<CtxMor> {
    let terms = terms_up_to(sig, x, depth);
    if y == 0 {
        return vec![CtxMor { source: x, comps: Vec::new() }];
    }
    if terms.is_empty() {
        return Vec::new();
    }
    let mut keyed: Vec<(usize, String, CtxMor)> =
        itertools::Itertools::multi_cartesian_product((0..y).map(|_| terms.iter().cloned()))
            .map(|comps| {
                let m = CtxMor { source: x, comps };
                (m.depth(), m.to_string(), m)
            })
            .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.into_iter().map(|(_, _, m)| m).collect()
}

/// A finite meet-semilattice seen as a category: one morphism `x -> y`
/// exactly when `x ≤ y`, products are meets, the top is terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeCategory {
    pub names: Vec<String>,
    pub top: usize,
    pub meet: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlMor {
    pub source: usize,
    pub target: usize,
}

impl fmt::Display for SlMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<={}", self.source, self.target)
    }
}

impl SemilatticeCategory {
    pub fn new(names: Vec<String>, top: usize, meet: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if top >= n || meet.len() != n || meet.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::Invalid("meet table has the wrong shape".into()));
        }
        let c = SemilatticeCategory { names, top, meet };
        for a in 0..n {
            if c.meet[a][a] != a {
                return Err(Error::Invalid(format!("meet is not idempotent at {}", c.names[a])));
            }
            if c.meet[a][top] != a {
                return Err(Error::Invalid(format!("top is not a unit at {}", c.names[a])));
            }
            for b in 0..n {
                if c.meet[a][b] != c.meet[b][a] {
                    return Err(Error::Invalid(format!("meet is not commutative at ({},{})", c.names[a], c.names[b])));
                }
                for d in 0..n {
                    if c.meet[c.meet[a][b]][d] != c.meet[a][c.meet[b][d]] {
                        return Err(Error::Invalid("meet is not associative".into()));
                    }
                }
            }
        }
        Ok(c)
    }

    /// The chain `names[0] > names[1] > ...`, top first.
    pub fn chain(names: &[&str]) -> Self {
        let n = names.len();
        let meet = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        Self::new(names.iter().map(|s| s.to_string()).collect(), 0, meet).expect("chains are semilattices")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Invalid(format!("unknown object `{name}`")))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet[x][y] == x
    }

    pub fn hom(&self, x: usize, y: usize) -> Option<SlMor> {
        self.leq(x, y).then_some(SlMor { source: x, target: y })
    }

    pub fn identity(&self, x: usize) -> SlMor {
        SlMor { source: x, target: x }
    }

    pub fn compose(&self, g: SlMor, f: SlMor) -> Result<SlMor> {
        if f.target != g.source {
            return Err(Error::Mismatch("composable semilattice morphisms must meet".into()));
        }
        Ok(SlMor { source: f.source, target: g.target })
    }

    pub fn product(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn pr1(&self, x: usize, y: usize) -> SlMor {
        SlMor { source: self.meet[x][y], target: x }
    }

    pub fn pr2(&self, x: usize, y: usize) -> SlMor {
        SlMor { source: self.meet[x][y], target: y }
    }

    pub fn pair(&self, f: SlMor, g: SlMor) -> Result<SlMor> {
        if f.source != g.source {
            return Err(Error::Mismatch("pairing needs a common source".into()));
        }
        Ok(SlMor { source: f.source, target: self.meet[f.target][g.target] })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            elements: Vec<String>,
            top: String,
            #[serde(default)]
            meet: BTreeMap<String, String>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        let n = raw.elements.len();
        let idx = |s: &str| {
            raw.elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| Error::Invalid(format!("unknown element `{s}`")))
        };
        let top = idx(&raw.top)?;
        let mut meet = vec![vec![usize::MAX; n]; n];
        #[allow(clippy::needless_range_loop)]
        for a in 0..n {
            meet[a][a] = a;
            meet[a][top] = a;
            meet[top][a] = a;
        }
        for (k, v) in &raw.meet {
            let inner = k
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Invalid(format!("meet key `{k}` is not of the form (a,b)")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Invalid(format!("meet key `{k}` is not of the form (a,b)")))?;
            let (a, b, c) = (idx(a.trim())?, idx(b.trim())?, idx(v)?);
            for (p, q) in [(a, b), (b, a)] {
                if meet[p][q] != usize::MAX && meet[p][q] != c {
                    return Err(Error::Invalid(format!("conflicting meet entries for `{k}`")));
                }
                meet[p][q] = c;
            }
        }
        if meet.iter().flatten().any(|&v| v == usize::MAX) {
            return Err(Error::Invalid("meet table is incomplete".into()));
        }
        Self::new(raw.elements, top, meet)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut meet = serde_json::Map::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if a != self.top && b != self.top {
                    meet.insert(
                        format!("({},{})", self.names[a], self.names[b]),
                        self.names[self.meet[a][b]].clone().into(),
                    );
                }
            }
        }
        serde_json::json!({ "elements": self.names, "top": self.names[self.top], "meet": meet })
    }
}
