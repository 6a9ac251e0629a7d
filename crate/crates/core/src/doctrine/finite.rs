use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::{Doctrine, Tri};
use crate::category::{SemilatticeCategory, SlMor};
use crate::error::{Error, Result};

/// A subset of the atoms of one fiber, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSet(pub u64);

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<String> = (0..64).filter(|k| self.0 & (1 << k) != 0).map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", bits.join(","))
    }
}

/// Largest number of atoms per fiber.
pub const MAX_ATOMS: usize = 16;

/// A doctrine over a finite semilattice whose fiber at `x` is the power set
/// of `atoms[x]`.
///
/// Reindexing along `x ≤ y` is preimage under an atom map
/// `atoms[x] -> atoms[y]`; every Boolean homomorphism between finite power
/// sets has this form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteDoctrine {
    pub base: SemilatticeCategory,
    pub atoms: Vec<Vec<String>>,
    /// `maps[x][y]` is defined exactly when `x ≤ y`.
    maps: Vec<Vec<Option<Vec<usize>>>>,
}

impl FiniteDoctrine {
    /// `map(x, y)` gives the atom map for `x < y`; identities are implied.
    pub fn new(
        base: SemilatticeCategory,
        atoms: Vec<Vec<String>>,
        mut map: impl FnMut(usize, usize) -> Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = base.len();
        if atoms.len() != n {
            return Err(Error::Invalid("one atom list per object is required".into()));
        }
        if let Some(a) = atoms.iter().find(|a| a.len() > MAX_ATOMS) {
            return Err(Error::TooLarge(format!("{} atoms in one fiber (limit {MAX_ATOMS})", a.len())));
        }
        let mut maps = vec![vec![None; n]; n];
        #[allow(clippy::needless_range_loop)]
        for x in 0..n {
            maps[x][x] = Some((0..atoms[x].len()).collect());
            for y in 0..n {
                if x != y && base.leq(x, y) {
                    maps[x][y] = map(x, y);
                }
            }
        }
        // Fill missing maps by composing through intermediate objects.
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    if maps[x][y].is_some() || !base.leq(x, y) {
                        continue;
                    }
                    let found = (0..n).find_map(|z| match (&maps[x][z], &maps[z][y]) {
                        (Some(xz), Some(zy)) if z != x && z != y => Some(xz.iter().map(|&a| zy[a]).collect::<Vec<_>>()),
                        _ => None,
                    });
                    if let Some(m) = found {
                        maps[x][y] = Some(m);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !base.leq(x, y) {
                    continue;
                }
                let m = maps[x][y]
                    .as_ref()
                    .ok_or_else(|| Error::Invalid(format!("no atom map for {} <= {}", base.names[x], base.names[y])))?;
                if m.len() != atoms[x].len() || m.iter().any(|&a| a >= atoms[y].len()) {
                    return Err(Error::Invalid(format!("atom map for {} <= {} has the wrong shape", base.names[x], base.names[y])));
                }
            }
        }
        let d = FiniteDoctrine { base, atoms, maps };
        d.check_functorial()?;
        Ok(d)
    }

    fn check_functorial(&self) -> Result<()> {
        let n = self.base.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.base.leq(x, y) && self.base.leq(y, z) {
                        let (xy, yz, xz) = (self.map(x, y), self.map(y, z), self.map(x, z));
                        if xy.iter().map(|&a| yz[a]).ne(xz.iter().copied()) {
                            return Err(Error::Invalid(format!(
                                "reindexing is not functorial along {} <= {} <= {}",
                                self.base.names[x], self.base.names[y], self.base.names[z]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn map(&self, x: usize, y: usize) -> &[usize] {
        self.maps[x][y].as_deref().expect("atom maps exist along the order")
    }

    pub fn full(&self, x: usize) -> u64 {
        if self.atoms[x].len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.atoms[x].len()) - 1
        }
    }

    pub fn elem_named(&self, x: usize, names: &[&str]) -> Result<AtomSet> {
        let mut bits = 0;
        for n in names {
            let k = self.atoms[x]
                .iter()
                .position(|a| a == n)
                .ok_or_else(|| Error::Invalid(format!("unknown atom `{n}` at {}", self.base.names[x])))?;
            bits |= 1 << k;
        }
        Ok(AtomSet(bits))
    }

    pub fn elem_names(&self, x: usize, e: AtomSet) -> Vec<String> {
        (0..self.atoms[x].len()).filter(|k| e.0 & (1 << k) != 0).map(|k| self.atoms[x][k].clone()).collect()
    }

    /// Reads the base semilattice plus `fibers` and `reindex` tables.
    pub fn from_json(v: &Value) -> Result<Self> {
        let base = SemilatticeCategory::from_json(v)?;
        let bad = |m: String| Error::Invalid(format!("finite doctrine JSON: {m}"));
        let fibers = v.get("fibers").and_then(Value::as_object).ok_or_else(|| bad("missing `fibers`".into()))?;
        let mut atoms = vec![Vec::new(); base.len()];
        for (obj, list) in fibers {
            let x = base.index(obj)?;
            atoms[x] = list
                .as_array()
                .ok_or_else(|| bad(format!("fiber `{obj}` is not a list")))?
                .iter()
                .map(|a| a.as_str().map(str::to_string).ok_or_else(|| bad("atoms are strings".into())))
                .collect::<Result<_>>()?;
        }
        let mut tables: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        if let Some(re) = v.get("reindex").and_then(Value::as_object) {
            for (key, table) in re {
                let inner = key.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')'));
                let (a, b) = inner.and_then(|s| s.split_once(',')).ok_or_else(|| bad(format!("key `{key}` is not (x,y)")))?;
                let (x, y) = (base.index(a.trim())?, base.index(b.trim())?);
                if !base.leq(x, y) {
                    return Err(bad(format!("`{key}` is not a morphism")));
                }
                let table = table.as_object().ok_or_else(|| bad(format!("table `{key}` is not an object")))?;
                let mut m = vec![usize::MAX; atoms[x].len()];
                for (ay, pre) in table {
                    let j = atoms[y].iter().position(|s| s == ay).ok_or_else(|| bad(format!("unknown atom `{ay}`")))?;
                    for ax in pre.as_array().ok_or_else(|| bad("preimages are lists".into()))? {
                        let ax = ax.as_str().ok_or_else(|| bad("atoms are strings".into()))?;
                        let i = atoms[x].iter().position(|s| s == ax).ok_or_else(|| bad(format!("unknown atom `{ax}`")))?;
                        if m[i] != usize::MAX {
                            return Err(bad(format!("atom `{ax}` lies in two preimages under `{key}`")));
                        }
                        m[i] = j;
                    }
                }
                if m.contains(&usize::MAX) {
                    return Err(bad(format!("preimages under `{key}` do not cover the source atoms")));
                }
                tables.insert((x, y), m);
            }
        }
        FiniteDoctrine::new(base, atoms, |x, y| tables.get(&(x, y)).cloned())
    }

    pub fn to_json(&self) -> Value {
        let mut out = self.base.to_json();
        let n = self.base.len();
        let fibers: serde_json::Map<String, Value> =
            (0..n).map(|x| (self.base.names[x].clone(), json!(self.atoms[x]))).collect();
        let mut re = serde_json::Map::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && self.base.leq(x, y) {
                    let m = self.map(x, y);
                    let table: serde_json::Map<String, Value> = (0..self.atoms[y].len())
                        .map(|j| {
                            let pre: Vec<&String> = (0..m.len()).filter(|&i| m[i] == j).map(|i| &self.atoms[x][i]).collect();
                            (self.atoms[y][j].clone(), json!(pre))
                        })
                        .collect();
                    re.insert(format!("({},{})", self.base.names[x], self.base.names[y]), table.into());
                }
            }
        }
        out["fibers"] = fibers.into();
        out["reindex"] = re.into();
        out
    }
}

impl Doctrine for FiniteDoctrine {
    type Obj = usize;
    type Mor = SlMor;
    type Elem = AtomSet;

    fn terminal(&self) -> usize {
        self.base.top
    }
    fn product(&self, x: &usize, y: &usize) -> usize {
        self.base.product(*x, *y)
    }
    fn pr1(&self, x: &usize, y: &usize) -> SlMor {
        self.base.pr1(*x, *y)
    }
    fn pr2(&self, x: &usize, y: &usize) -> SlMor {
        self.base.pr2(*x, *y)
    }
    fn pair(&self, f: &SlMor, g: &SlMor) -> Result<SlMor> {
        self.base.pair(*f, *g)
    }
    fn identity(&self, x: &usize) -> SlMor {
        self.base.identity(*x)
    }
    fn bang(&self, x: &usize) -> SlMor {
        SlMor { source: *x, target: self.base.top }
    }
    fn compose(&self, g: &SlMor, f: &SlMor) -> Result<SlMor> {
        self.base.compose(*g, *f)
    }
    fn source(&self, f: &SlMor) -> usize {
        f.source
    }
    fn target(&self, f: &SlMor) -> usize {
        f.target
    }
    fn morphisms(&self, x: &usize, y: &usize, _depth: usize) -> Vec<SlMor> {
        self.base.hom(*x, *y).into_iter().collect()
    }
    fn hom_is_exhaustive(&self) -> bool {
        true
    }
    fn objects(&self) -> Option<Vec<usize>> {
        Some((0..self.base.len()).collect())
    }

    fn top(&self, x: &usize) -> AtomSet {
        AtomSet(self.full(*x))
    }
    fn bot(&self, _x: &usize) -> AtomSet {
        AtomSet(0)
    }
    fn meet(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        AtomSet(a.0 & b.0)
    }
    fn join(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        AtomSet(a.0 | b.0)
    }
    fn neg(&self, x: &usize, a: &AtomSet) -> AtomSet {
        AtomSet(self.full(*x) & !a.0)
    }
    fn reindex(&self, f: &SlMor, a: &AtomSet) -> Result<AtomSet> {
        if !self.base.leq(f.source, f.target) {
            return Err(Error::Mismatch("not a morphism".into()));
        }
        if a.0 & !self.full(f.target) != 0 {
            return Err(Error::Mismatch(format!("{a} is not in the fiber at {}", self.base.names[f.target])));
        }
        let m = self.map(f.source, f.target);
        Ok(AtomSet((0..m.len()).filter(|&i| a.0 & (1 << m[i]) != 0).fold(0, |acc, i| acc | (1 << i))))
    }
    fn leq(&self, _x: &usize, a: &AtomSet, b: &AtomSet) -> Tri {
        Tri::from_bool(a.0 & !b.0 == 0)
    }
    fn elements(&self, x: &usize) -> Option<Vec<AtomSet>> {
        Some((0..=self.full(*x)).map(AtomSet).collect())
    }
    fn check_elem(&self, x: &usize, a: &AtomSet) -> Result<()> {
        if a.0 & !self.full(*x) != 0 {
            return Err(Error::Mismatch(format!("{a} is not in the fiber at {}", self.base.names[*x])));
        }
        Ok(())
    }
}
