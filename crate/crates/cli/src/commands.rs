//! One function per subcommand. Each prints its result and returns what it
//! established; errors bubble up to exit code 3.

use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use doctrine_core::doctrine::ConstAdjoined;
use doctrine_core::filters::MixedSequent;
use doctrine_core::free1::{decide_clause, ClauseStatus, Refutation};
use doctrine_core::io::SynWitness;
use doctrine_core::models::{enumerate_finite_models, FiniteModel};
use doctrine_core::{
    add_constant, check_family_axioms, check_pair_axioms, check_witness, elementary_quotient, extend_to_ultrafilter,
    filter_closure, ideal_closure, parse_free1, parse_sequent, parse_theory, ultrafilters_of, witness_from_json,
    witness_to_json, CoverModel, Doctrine, Error, FamilyKind, FiniteDoctrine, FiniteFamily, Free1Options, PointSet,
    SearchBounds, SequentFile, StructureDoctrine, StructureModel, SyntacticDoctrine, Tri,
};

use crate::{Opts, Outcome};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_theory(o: Opts, path: &Path) -> Result<SyntacticDoctrine> {
    let th = parse_theory(&read(path)?).with_context(|| path.display().to_string())?;
    Ok(SyntacticDoctrine::new(th, o.depth, o.model_bound))
}

fn load_sequent(d: &SyntacticDoctrine, path: &Path) -> Result<SequentFile> {
    let file = parse_sequent(&read(path)?).with_context(|| path.display().to_string())?;
    file.check(&d.theory.signature).with_context(|| path.display().to_string())?;
    Ok(file)
}

fn load_finite(path: &Path) -> Result<FiniteDoctrine> {
    FiniteDoctrine::from_json(&read_json(path)?).with_context(|| path.display().to_string())
}

fn bounds(o: Opts) -> SearchBounds {
    SearchBounds { depth: o.depth, max_n: o.max_n }
}

fn bounds_json(o: Opts) -> Value {
    json!({ "depth": o.depth, "max_n": o.max_n, "model_bound": o.model_bound })
}

fn emit(o: Opts, value: &Value, text: impl FnOnce() -> String) {
    if o.json {
        println!("{value}");
    } else {
        print!("{}", text());
    }
}

fn tri_name(t: Tri) -> &'static str {
    match t {
        Tri::True => "proved",
        Tri::False => "refuted",
        Tri::Unknown => "unknown",
    }
}

fn tri_outcome(t: Tri) -> Outcome {
    match t {
        Tri::True => Outcome::Pass,
        Tri::False => Outcome::Fail,
        Tri::Unknown => Outcome::Unknown,
    }
}

fn pass_fail(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

/// The models within the bound, nonempty carriers first, so a reported
/// countermodel is the empty one only when nothing else refutes.
fn oracle_models(d: &SyntacticDoctrine) -> Vec<StructureModel> {
    let (empty, mut rest): (Vec<_>, Vec<_>) = d.models().iter().cloned().partition(|m| m.size == 0);
    rest.extend(empty);
    rest
}

fn countermodel_json(models: &[StructureModel], r: &Refutation) -> Value {
    let point: Vec<usize> = r.point.iter().map(|v| v + 1).collect();
    json!({ "model": models[r.model].to_json(), "point": point })
}

/// The status, witness or countermodel of one clause.
fn clause_json<'a>(
    models: &[StructureModel],
    ds: &ConstAdjoined<'a, SyntacticDoctrine>,
    seq: &MixedSequent<ConstAdjoined<'a, SyntacticDoctrine>>,
    status: &ClauseStatus<usize, doctrine_core::CtxMor>,
) -> Result<Value> {
    let mut out = json!({ "status": tri_name(status.tri()), "sequent": seq.to_string() });
    match status {
        ClauseStatus::Proved(w) => {
            if !check_witness(ds, seq, w)? {
                bail!("internal error: the witness {w} does not re-verify");
            }
            out["witness"] = witness_to_json(w);
        }
        ClauseStatus::Refuted(r) => out["countermodel"] = countermodel_json(models, r),
        ClauseStatus::Unknown => {}
    }
    Ok(out)
}

fn clause_text(v: &Value) -> String {
    let mut s = format!("status: {}\n", v["status"].as_str().unwrap_or("?"));
    if let Some(w) = v.get("witness") {
        s += &format!("witness: {w}\n");
    }
    if let Some(c) = v.get("countermodel") {
        s += &format!("countermodel: {}\npoint: {}\n", c["model"], c["point"]);
    }
    s
}

pub fn entail(o: Opts, theory: &Path, sequent: &Path) -> Result<Outcome> {
    let start = Instant::now();
    let d = load_theory(o, theory)?;
    let file = load_sequent(&d, sequent)?;
    let s = file.context;
    let ds = add_constant(&d, s);
    let seq = file.to_mixed(&ds);
    let models = oracle_models(&d);
    let status = decide_clause(&d, &s, &seq, bounds(o), &models)?;
    let mut out = clause_json(&models, &ds, &seq, &status)?;
    out["bounds"] = bounds_json(o);
    out["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    emit(o, &out, || clause_text(&out));
    Ok(tri_outcome(status.tri()))
}

pub fn witness_check(o: Opts, theory: &Path, sequent: &Path, witness: &Path) -> Result<Outcome> {
    let d = load_theory(o, theory)?;
    let file = load_sequent(&d, sequent)?;
    let ds = add_constant(&d, file.context);
    let seq = file.to_mixed(&ds);
    let w: SynWitness = witness_from_json(&read_json(witness)?, &ds, &seq).with_context(|| witness.display().to_string())?;
    let valid = check_witness(&ds, &seq, &w)?;
    let out = json!({ "valid": valid, "witness": witness_to_json(&w), "sequent": seq.to_string() });
    emit(o, &out, || format!("{}: {w}\n", if valid { "valid" } else { "invalid" }));
    Ok(pass_fail(valid))
}

fn closed(d: &FiniteDoctrine, kind: FamilyKind, fam: FiniteFamily) -> FiniteFamily {
    match kind {
        FamilyKind::Filter | FamilyKind::Ultrafilter => filter_closure(d, &fam),
        FamilyKind::Ideal | FamilyKind::Ultraideal => ideal_closure(d, &fam),
    }
}

pub fn check_family(o: Opts, doctrine: &Path, family: &Path, kind: &str, close: bool) -> Result<Outcome> {
    let d = load_finite(doctrine)?;
    let v = read_json(family)?;
    let report = if kind == "pair" {
        let part = |key: &str| -> Result<FiniteFamily> {
            let sub = v.get(key).with_context(|| format!("a pair file needs a `{key}` entry"))?;
            Ok(FiniteFamily::from_json(&d, sub)?)
        };
        let (mut f, mut i) = (part("filter")?, part("ideal")?);
        if close {
            f = filter_closure(&d, &f);
            i = ideal_closure(&d, &i);
        }
        check_pair_axioms(&d, &f, &i)?
    } else {
        let Some(k) = FamilyKind::parse(kind) else {
            bail!("unknown kind `{kind}`; expected filter, ideal, ultrafilter, ultraideal or pair");
        };
        let mut fam = FiniteFamily::from_json(&d, &v)?;
        if close {
            fam = closed(&d, k, fam);
        }
        check_family_axioms(&d, k, &fam)?
    };
    let out = serde_json::to_value(&report)?;
    emit(o, &out, || {
        let mut s = String::new();
        for c in &report.clauses {
            match &c.counterexample {
                None => s += &format!("pass  {} ({} checked)\n", c.name, c.checked),
                Some(e) => s += &format!("FAIL  {}: {e}\n", c.name),
            }
        }
        s
    });
    Ok(pass_fail(report.passed()))
}

pub fn extend_ultrafilter(o: Opts, doctrine: &Path, filter: Option<&Path>, ideal: Option<&Path>) -> Result<Outcome> {
    let d = load_finite(doctrine)?;
    let load = |p: Option<&Path>| -> Result<Option<FiniteFamily>> {
        p.map(|p| Ok(FiniteFamily::from_json(&d, &read_json(p)?)?)).transpose()
    };
    let f = load(filter)?.unwrap_or_else(|| filter_closure(&d, &FiniteFamily::empty(&d)));
    let i = load(ideal)?.unwrap_or_else(|| ideal_closure(&d, &FiniteFamily::empty(&d)));
    let u = extend_to_ultrafilter(&d, &f, &i)?;
    let report = check_family_axioms(&d, FamilyKind::Ultrafilter, &u)?;
    if !report.passed() {
        bail!("internal error: the extension is not an ultrafilter: {}", report.first_failure());
    }
    let out = json!({ "ultrafilter": u.to_json(&d) });
    emit(o, &out, || format!("{}\n", out["ultrafilter"]));
    Ok(Outcome::Pass)
}

pub fn enum_ultrafilters(o: Opts, doctrine: &Path) -> Result<Outcome> {
    let d = load_finite(doctrine)?;
    let ufs = ultrafilters_of(&d)?;
    let list: Vec<Value> = ufs.iter().map(|u| u.to_json(&d)).collect();
    let out = json!({ "count": list.len(), "ultrafilters": list });
    emit(o, &out, || {
        let mut s = format!("{} ultrafilters\n", list.len());
        for u in &list {
            s += &format!("{u}\n");
        }
        s
    });
    Ok(Outcome::Pass)
}

fn finite_model_json(d: &FiniteDoctrine, m: &FiniteModel) -> Value {
    let present: Vec<&str> = (0..d.base.len()).filter(|&x| m.present[x]).map(|x| d.base.names[x].as_str()).collect();
    let atoms: serde_json::Map<String, Value> = (0..d.base.len())
        .filter_map(|x| m.atom[x].map(|k| (d.base.names[x].clone(), json!(d.atoms[x][k]))))
        .collect();
    json!({ "present": present, "atoms": atoms })
}

pub fn enum_models(o: Opts, input: &Path) -> Result<Outcome> {
    let text = read(input)?;
    let list: Vec<Value> = if text.trim_start().starts_with('{') {
        let d = FiniteDoctrine::from_json(&serde_json::from_str(&text)?)?;
        enumerate_finite_models(&d).iter().map(|m| finite_model_json(&d, m)).collect()
    } else {
        let d = SyntacticDoctrine::new(parse_theory(&text)?, o.depth, o.model_bound);
        d.models().iter().map(StructureModel::to_json).collect()
    };
    let out = json!({ "count": list.len(), "model_bound": o.model_bound, "models": list });
    emit(o, &out, || {
        let mut s = format!("{} models\n", list.len());
        for m in &list {
            s += &format!("{m}\n");
        }
        s
    });
    Ok(Outcome::Pass)
}

pub fn free1_leq(o: Opts, theory: &Path, context: usize, lhs: &str, rhs: &str) -> Result<Outcome> {
    let d = load_theory(o, theory)?;
    let sig = &d.theory.signature;
    let e1 = parse_free1(lhs, context, sig).context("left expression")?;
    let e2 = parse_free1(rhs, context, sig).context("right expression")?;
    let opts = Free1Options { bounds: bounds(o), jobs: o.jobs.max(1) };
    let models = oracle_models(&d);
    let v = doctrine_core::free1_leq(&d, &context, &e1, &e2, opts, &models)?;
    let ds = add_constant(&d, context);
    let clauses = v.clauses.iter().map(|c| clause_json(&models, &ds, &c.sequent, &c.status)).collect::<Result<Vec<_>>>()?;
    let out = json!({ "status": tri_name(v.status), "lhs": e1.to_string(), "rhs": e2.to_string(), "clauses": clauses, "bounds": bounds_json(o) });
    emit(o, &out, || {
        let mut s = format!("{} <= {}: {}\n", e1, e2, tri_name(v.status));
        for (k, c) in clauses.iter().enumerate() {
            s += &format!("clause {}: {}\n", k + 1, c["sequent"].as_str().unwrap_or(""));
            for line in clause_text(c).lines() {
                s += &format!("  {line}\n");
            }
        }
        s
    });
    Ok(tri_outcome(v.status))
}

fn diagonal(d: &StructureDoctrine, k: usize) -> PointSet {
    PointSet::from_tuples(d.points(k).into_iter().map(|p| p.iter().chain(&p).copied().collect()))
}

/// `{"base": model, "cover": model, "map": [labels]}` with the map sending
/// each cover point to a base point.
pub fn quotient_model(o: Opts, theory: &Path, cover: &Path) -> Result<Outcome> {
    let sig = parse_theory(&read(theory)?)?.signature;
    let v = read_json(cover)?;
    let field = |k: &str| v.get(k).with_context(|| format!("the cover file needs a `{k}` entry"));
    let base = StructureModel::from_json(field("base")?, &sig)?;
    let cover_model = StructureModel::from_json(field("cover")?, &sig)?;
    let map = field("map")?
        .as_array()
        .context("`map` must be a list")?
        .iter()
        .map(|x| x.as_u64().filter(|&k| k >= 1).map(|k| k as usize - 1).context("map labels start at 1"))
        .collect::<Result<Vec<_>>>()?;
    let d = StructureDoctrine::new(sig, base)?;
    let n = CoverModel::new(&d, cover_model, map)?;
    let delta = |k: &usize| diagonal(&d, *k);
    let objects = [0usize, 1, 2];
    let mut mors = d.morphisms(&1, &1, o.depth);
    mors.extend(d.morphisms(&0, &1, o.depth));
    let samples = |x: &usize| d.elements(x).unwrap_or_else(|| vec![d.bot(x), d.top(x)]);
    let q = match elementary_quotient(&d, &n, &delta, &objects, &mors, &samples) {
        Ok(q) => q,
        Err(Error::Precondition(msg)) => {
            let out = json!({ "status": "fail", "reason": msg });
            emit(o, &out, || format!("fail: {msg}\n"));
            return Ok(Outcome::Fail);
        }
        Err(e) => return Err(e.into()),
    };
    let reps = q.representatives(&d, &1);
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    for (p, r) in &reps {
        match classes.iter_mut().find(|(c, _)| *c == r[0]) {
            Some((_, members)) => members.push(p[0] + 1),
            None => classes.push((r[0], vec![p[0] + 1])),
        }
    }
    let classes: Vec<Vec<usize>> = classes.into_iter().map(|(_, m)| m).collect();
    let out = json!({
        "status": "pass",
        "size": classes.len(),
        "classes": classes,
        "checked": { "objects": objects, "morphisms": mors.len() },
    });
    emit(o, &out, || format!("pass: {} classes {}\n", classes.len(), out["classes"]));
    Ok(Outcome::Pass)
}
