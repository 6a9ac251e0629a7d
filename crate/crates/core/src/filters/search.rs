use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::doctrine::{join_all, meet_all, product_of, Doctrine, Tri};
use crate::error::{Error, Result};

/// `⋀ ∀Y_i α_i ∧ ⋀ ∃W_h γ_h ≤ ⋁ ∀Z_j β_j ∨ ⋁ ∃V_k δ_k`, with every element
/// paired with its bound object.
///
/// Over a doctrine with a constant of type `S` adjoined, this is the sequent at
/// `S`; over the original doctrine, `S` is the terminal object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSequent<D: Doctrine> {
    pub forall_prem: Vec<(D::Obj, D::Elem)>,
    pub exists_prem: Vec<(D::Obj, D::Elem)>,
    pub forall_concl: Vec<(D::Obj, D::Elem)>,
    pub exists_concl: Vec<(D::Obj, D::Elem)>,
}

impl<D: Doctrine> Default for MixedSequent<D> {
    fn default() -> Self {
        MixedSequent { forall_prem: Vec::new(), exists_prem: Vec::new(), forall_concl: Vec::new(), exists_concl: Vec::new() }
    }
}

impl<D: Doctrine> MixedSequent<D> {
    /// The plain sequent `⋀ ∀α_i ≤ ⋁ ∀β_j`.
    pub fn universal(prem: Vec<(D::Obj, D::Elem)>, concl: Vec<(D::Obj, D::Elem)>) -> Self {
        MixedSequent { forall_prem: prem, forall_concl: concl, ..Default::default() }
    }

    /// The objects `Z_1, ..., Z_j̄, W_1, ..., W_h̄` whose product is the
    /// context of every witness.
    pub fn context_factors(&self) -> Vec<D::Obj> {
        self.forall_concl.iter().chain(&self.exists_prem).map(|(o, _)| o.clone()).collect()
    }

    pub fn check(&self, d: &D) -> Result<()> {
        for (o, e) in self.forall_prem.iter().chain(&self.exists_prem).chain(&self.forall_concl).chain(&self.exists_concl) {
            d.check_elem(o, e)?;
        }
        Ok(())
    }
}

impl<D: Doctrine> fmt::Display for MixedSequent<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |items: &[(D::Obj, D::Elem)], q: &str| -> Vec<String> {
            items.iter().map(|(o, e)| format!("{q}[{o}] {e}")).collect()
        };
        let mut lhs = side(&self.forall_prem, "forall");
        lhs.extend(side(&self.exists_prem, "exists"));
        let mut rhs = side(&self.forall_concl, "forall");
        rhs.extend(side(&self.exists_concl, "exists"));
        let show = |v: Vec<String>, empty: &str| if v.is_empty() { empty.to_string() } else { v.join(", ") };
        write!(f, "{} |- {}", show(lhs, "top"), show(rhs, "bot"))
    }
}

/// Instantiations certifying a mixed sequent. Picks are 1-based indices into
/// the universal premises (`picks`) and existential conclusions (`picks_ex`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Witness<M> {
    pub n: usize,
    pub picks: Vec<usize>,
    pub morphisms: Vec<M>,
    pub n_prime: usize,
    pub picks_ex: Vec<usize>,
    pub morphisms_ex: Vec<M>,
}

impl<M> Witness<M> {
    pub fn universal(picks: Vec<usize>, morphisms: Vec<M>) -> Self {
        Witness { n: picks.len(), picks, morphisms, n_prime: 0, picks_ex: Vec::new(), morphisms_ex: Vec::new() }
    }
}

impl<M: fmt::Display> fmt::Display for Witness<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |p: &[usize], m: &[M]| p.iter().zip(m).map(|(i, g)| format!("{i}:{g}")).join(" ");
        write!(f, "n={} [{}]", self.n, list(&self.picks, &self.morphisms))?;
        if self.n_prime > 0 {
            write!(f, " n'={} [{}]", self.n_prime, list(&self.picks_ex, &self.morphisms_ex))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub depth: usize,
    pub max_n: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { depth: 2, max_n: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<M> {
    Witness(Witness<M>),
    NoneUpTo(SearchBounds),
    /// No instantiation of any size works; only reported by backends whose
    /// hom-sets and order are decided exactly.
    DefinitelyDisjoint,
}

impl<M> SearchOutcome<M> {
    pub fn witness(&self) -> Option<&Witness<M>> {
        match self {
            SearchOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// One candidate tried by the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogEntry {
    pub depth: usize,
    pub picks: Vec<usize>,
    pub terms: Vec<String>,
    pub picks_ex: Vec<usize>,
    pub terms_ex: Vec<String>,
    pub certified: bool,
    pub refutation: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchLog {
    pub entries: Vec<LogEntry>,
    /// Depths skipped because even the full candidate set fails.
    pub skipped_depths: Vec<usize>,
}

/// The context `∏Z_j × ∏W_h` and both sides of the inequality for a given
/// choice of instantiations.
pub struct Instance<D: Doctrine> {
    pub context: D::Obj,
    pub lhs: D::Elem,
    pub rhs: D::Elem,
}

struct Frame<D: Doctrine> {
    context: D::Obj,
    /// `P(pr_{j̄+h})(γ_h)`, already met together.
    exists_prem: D::Elem,
    /// `P(pr_j)(β_j)`, already joined.
    forall_concl: D::Elem,
}

fn frame<D: Doctrine>(d: &D, seq: &MixedSequent<D>) -> Result<Frame<D>> {
    let (context, projs) = product_of(d, &seq.context_factors())?;
    let jbar = seq.forall_concl.len();
    let mut concl = Vec::with_capacity(jbar);
    for (j, (_, b)) in seq.forall_concl.iter().enumerate() {
        concl.push(d.reindex(&projs[j], b)?);
    }
    let mut prem = Vec::with_capacity(seq.exists_prem.len());
    for (h, (_, g)) in seq.exists_prem.iter().enumerate() {
        prem.push(d.reindex(&projs[jbar + h], g)?);
    }
    Ok(Frame {
        exists_prem: meet_all(d, &context, prem),
        forall_concl: join_all(d, &context, concl),
        context,
    })
}

/// Builds both sides of the inequality a witness must satisfy, checking that
/// each morphism has the right shape.
pub fn instance<D: Doctrine>(d: &D, seq: &MixedSequent<D>, w: &Witness<D::Mor>) -> Result<Instance<D>> {
    if w.n != w.picks.len() || w.n != w.morphisms.len() || w.n_prime != w.picks_ex.len() || w.n_prime != w.morphisms_ex.len() {
        return Err(Error::Mismatch("witness counts disagree with its lists".into()));
    }
    let fr = frame(d, seq)?;
    let inst = |side: &[(D::Obj, D::Elem)], pick: usize, g: &D::Mor| -> Result<D::Elem> {
        let (y, a) = side
            .get(pick.wrapping_sub(1))
            .ok_or_else(|| Error::Mismatch(format!("pick {pick} is out of range")))?;
        if d.source(g) != fr.context || d.target(g) != *y {
            return Err(Error::Mismatch(format!("{g} does not map {} to {y}", fr.context)));
        }
        d.reindex(g, a)
    };
    let mut lhs = fr.exists_prem.clone();
    for (&p, g) in w.picks.iter().zip(&w.morphisms) {
        lhs = d.meet(&lhs, &inst(&seq.forall_prem, p, g)?);
    }
    let mut rhs = fr.forall_concl.clone();
    for (&p, g) in w.picks_ex.iter().zip(&w.morphisms_ex) {
        rhs = d.join(&rhs, &inst(&seq.exists_concl, p, g)?);
    }
    Ok(Instance { context: fr.context, lhs, rhs })
}

/// Substitutes the witness and decides the resulting inequality. Never
/// searches.
pub fn check_witness<D: Doctrine>(d: &D, seq: &MixedSequent<D>, w: &Witness<D::Mor>) -> Result<bool> {
    let i = instance(d, seq, w)?;
    Ok(d.certify_leq(&i.context, &i.lhs, &i.rhs))
}

struct Candidate<D: Doctrine> {
    pick: usize,
    mor: D::Mor,
    elem: D::Elem,
}

fn candidates<D: Doctrine>(d: &D, ctx: &D::Obj, side: &[(D::Obj, D::Elem)], depth: usize) -> Result<Vec<Candidate<D>>> {
    let mut out = Vec::new();
    for (i, (y, a)) in side.iter().enumerate() {
        for g in d.morphisms(ctx, y, depth) {
            let elem = d.reindex(&g, a)?;
            out.push(Candidate { pick: i + 1, mor: g, elem });
        }
    }
    Ok(out)
}

/// Bounded search for the least witness.
///
/// For each morphism depth in turn, candidates are the pairs (premise,
/// morphism) in premise order and then hom-set order. A depth whose full
/// candidate set fails is skipped. Otherwise subsets are tried by total size
/// `n + n'`, then by `n`, then lexicographically, with `n, n' ≤ max_n`.
pub fn witness_search<D: Doctrine>(
    d: &D,
    seq: &MixedSequent<D>,
    bounds: SearchBounds,
    mut log: Option<&mut SearchLog>,
) -> Result<SearchOutcome<D::Mor>> {
    seq.check(d)?;
    let fr = frame(d, seq)?;
    let ctx = &fr.context;
    let mut full_fails_at_last = false;
    for depth in 0..=bounds.depth {
        let univ = candidates(d, ctx, &seq.forall_prem, depth)?;
        let ex = candidates(d, ctx, &seq.exists_concl, depth)?;
        let full_l = univ.iter().fold(fr.exists_prem.clone(), |acc, c| d.meet(&acc, &c.elem));
        let full_r = ex.iter().fold(fr.forall_concl.clone(), |acc, c| d.join(&acc, &c.elem));
        if !d.certify_leq(ctx, &full_l, &full_r) {
            full_fails_at_last = true;
            if let Some(l) = log.as_deref_mut() {
                l.skipped_depths.push(depth);
            }
            continue;
        }
        full_fails_at_last = false;
        let (nu, ne) = (univ.len().min(bounds.max_n), ex.len().min(bounds.max_n));
        for total in 0..=nu + ne {
            for n in total.saturating_sub(ne)..=total.min(nu) {
                for us in (0..univ.len()).combinations(n) {
                    let lhs = us.iter().fold(fr.exists_prem.clone(), |acc, &i| d.meet(&acc, &univ[i].elem));
                    for es in (0..ex.len()).combinations(total - n) {
                        let rhs = es.iter().fold(fr.forall_concl.clone(), |acc, &k| d.join(&acc, &ex[k].elem));
                        let ok = d.certify_leq(ctx, &lhs, &rhs);
                        if let Some(l) = log.as_deref_mut() {
                            l.entries.push(LogEntry {
                                depth,
                                picks: us.iter().map(|&i| univ[i].pick).collect(),
                                terms: us.iter().map(|&i| univ[i].mor.to_string()).collect(),
                                picks_ex: es.iter().map(|&k| ex[k].pick).collect(),
                                terms_ex: es.iter().map(|&k| ex[k].mor.to_string()).collect(),
                                certified: ok,
                                refutation: if ok { None } else { d.explain_gap(ctx, &lhs, &rhs) },
                            });
                        }
                        if ok {
                            return Ok(SearchOutcome::Witness(Witness {
                                n,
                                picks: us.iter().map(|&i| univ[i].pick).collect(),
                                morphisms: us.iter().map(|&i| univ[i].mor.clone()).collect(),
                                n_prime: total - n,
                                picks_ex: es.iter().map(|&k| ex[k].pick).collect(),
                                morphisms_ex: es.iter().map(|&k| ex[k].mor.clone()).collect(),
                            }));
                        }
                    }
                }
            }
        }
    }
    if full_fails_at_last && d.hom_is_exhaustive() {
        return Ok(SearchOutcome::DefinitelyDisjoint);
    }
    Ok(SearchOutcome::NoneUpTo(bounds))
}

/// `⋀ P(g_i)(α_{l_i}) ≤ ⋁ P(pr_j)(β_j)`: whether the universal filter
/// generated by the `αs` meets the universal ideal generated by the `βs`.
pub fn generated_intersect<D: Doctrine>(
    d: &D,
    alphas: &[(D::Obj, D::Elem)],
    betas: &[(D::Obj, D::Elem)],
    bounds: SearchBounds,
) -> Result<SearchOutcome<D::Mor>> {
    witness_search(d, &MixedSequent::universal(alphas.to_vec(), betas.to_vec()), bounds, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Closure {
    Filter,
    Ideal,
}

/// Evidence for membership in a generated family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCert<M> {
    /// Ideal case: 1-based picks of the generators joined on the right.
    pub joined: Vec<usize>,
    pub witness: Witness<M>,
}

/// Membership of `φ ∈ P(x)` in the universal filter or ideal generated by
/// `gens`.
///
/// Filter: some `⋀ P(f_i)(α_i) ≤ φ` with `f_i : x -> Y_i`. Ideal: for some
/// multiset of generators `α_1..α_n`, some `⋀ P(f_j)(φ) ≤ ⋁ P(pr_i)(α_i)`
/// with `f_j : ∏Y_i -> x`; multisets are tried by size and then
/// lexicographically, up to `max_n`.
pub fn generated_membership<D: Doctrine>(
    d: &D,
    kind: Closure,
    gens: &[(D::Obj, D::Elem)],
    x: &D::Obj,
    phi: &D::Elem,
    bounds: SearchBounds,
) -> Result<(Tri, Option<MembershipCert<D::Mor>>)> {
    let target = vec![(x.clone(), phi.clone())];
    match kind {
        Closure::Filter => match generated_intersect(d, gens, &target, bounds)? {
            SearchOutcome::Witness(w) => Ok((Tri::True, Some(MembershipCert { joined: Vec::new(), witness: w }))),
            SearchOutcome::NoneUpTo(_) => Ok((Tri::Unknown, None)),
            SearchOutcome::DefinitelyDisjoint => Ok((Tri::False, None)),
        },
        Closure::Ideal => {
            for size in 0..=bounds.max_n {
                for joined in (0..gens.len()).combinations_with_replacement(size) {
                    let concl: Vec<_> = joined.iter().map(|&i| gens[i].clone()).collect();
                    if let SearchOutcome::Witness(w) = generated_intersect(d, &target, &concl, bounds)? {
                        let joined = joined.iter().map(|i| i + 1).collect();
                        return Ok((Tri::True, Some(MembershipCert { joined, witness: w })));
                    }
                }
            }
            // Larger multisets of generators stay untried, so the answer is
            // never definite here.
            Ok((Tri::Unknown, None))
        }
    }
}
