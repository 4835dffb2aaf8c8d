use std::fs;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use biclosed_core::bijection::{associative_via_biclosed, order_string};
use biclosed_core::enumeration::{self, enum_biclosed_bruteforce, enum_biclosed_classified, enum_semigroups};
use biclosed_core::error::{AssociativityWitness, ClosureWitness};
use biclosed_core::order::FiniteLattice;
use biclosed_core::order::PosetView;
use biclosed_core::root_system::{act_set, biclosed_violation, is_biclosed, is_positive_system, stabilizer, Root};
use biclosed_core::semigroup::act_op;
use biclosed_core::verify;
use biclosed_core::{
    biclosed_to_semigroup, classify, op_to_pairs, semigroup_to_biclosed, Error, Permutation, QuasitrivialOp, RootSet,
};

use crate::args::{
    ActArgs, CheckArgs, ConvertArgs, EnumerateArgs, Format, InputArgs, Object, PosetArgs, Target, VerifyArgs, Via,
};

/// Largest rank the stabilizer is computed for by scanning the whole group.
const STABILIZER_LIMIT: usize = 7;

/// A command failure: exit code, the JSON written to stderr, and possibly a
/// report that still goes to the normal output.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub body: Value,
    pub output: Option<String>,
}

impl Failure {
    pub fn new(code: i32, kind: &str, message: impl Into<String>) -> Self {
        Failure { code, body: json!({ "error": kind, "message": message.into() }), output: None }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Failure::new(2, "InvalidConfig", message)
    }
}

fn pair(r: Root) -> [usize; 2] {
    [r.source(), r.target()]
}

fn closure_json(w: &ClosureWitness) -> Value {
    json!({
        "first": pair(w.first),
        "second": pair(w.second),
        "sum": pair(w.sum),
        "failing_side": if w.in_complement { "complement" } else { "set" },
    })
}

fn associativity_json(w: &AssociativityWitness) -> Value {
    match *w {
        AssociativityWitness::Triple(a, b, c) => json!({ "triple": [a, b, c] }),
        AssociativityWitness::MixedProjection(a, b) => json!({ "pair": [a, b] }),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RankTooLarge { .. } => 3,
            Error::NotBiclosed(_) => 4,
            Error::NotAssociative(_) => 5,
            Error::CrossCheckFailure(_) => 6,
            Error::LatticeViolation(_) => 7,
            _ => 2,
        };
        let mut body = json!({ "error": e.kind(), "message": e.to_string() });
        match &e {
            Error::NotBiclosed(w) => body["witness"] = closure_json(w),
            Error::NotAssociative(w) => body["witness"] = associativity_json(w),
            Error::RankTooLarge { n, limit } => {
                body["n"] = json!(n);
                body["limit"] = json!(limit);
            }
            _ => {}
        }
        Failure { code, body, output: None }
    }
}

type Outcome = Result<String, Failure>;

pub enum Input {
    Set(RootSet),
    Op(QuasitrivialOp),
}

fn read_input(args: &InputArgs) -> Result<Input, Failure> {
    let text = match (&args.input, &args.json) {
        (Some(path), None) => fs::read_to_string(path)
            .map_err(|e| Failure::new(2, "Io", format!("cannot read {}: {e}", path.display())))?,
        (None, Some(s)) => s.clone(),
        _ => return Err(Failure::config("exactly one of --input or --json is required")),
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::config(format!("malformed JSON: {e}")))?;
    let bad = |e: serde_json::Error| Failure::config(e.to_string());
    if value.get("roots").is_some() {
        Ok(Input::Set(serde_json::from_value(value).map_err(bad)?))
    } else if value.get("table").is_some() {
        Ok(Input::Op(serde_json::from_value(value).map_err(bad)?))
    } else if value.is_array() {
        let rows: Vec<Vec<usize>> = serde_json::from_value(value).map_err(bad)?;
        Ok(Input::Op(QuasitrivialOp::from_rows(rows)?))
    } else {
        Err(Failure::config(r#"input must be a root set {"n","roots"} or a table {"m","table"}"#))
    }
}

fn read_set(args: &InputArgs) -> Result<RootSet, Failure> {
    match read_input(args)? {
        Input::Set(c) => Ok(c),
        Input::Op(_) => Err(Failure::config("expected a root set, got a table")),
    }
}

fn read_op(args: &InputArgs) -> Result<QuasitrivialOp, Failure> {
    match read_input(args)? {
        Input::Op(f) => Ok(f),
        Input::Set(_) => Err(Failure::config("expected a table, got a root set")),
    }
}

fn render<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn perm_json(w: &Permutation) -> Value {
    json!({ "cycles": w.cycle_string(), "images": w.images() })
}

fn rank_limit(force: bool) -> usize {
    if force {
        enumeration::ENUMERATION_LIMIT
    } else {
        enumeration::BRUTE_FORCE_LIMIT
    }
}

fn check_rank(n: usize, force: bool) -> Result<(), Failure> {
    let limit = rank_limit(force);
    if n > limit {
        return Err(Error::RankTooLarge { n, limit }.into());
    }
    Ok(())
}

/// `canonical={roots}` and the block structure, the two columns of the table.
fn csv_row(c: &RootSet, f: &QuasitrivialOp) -> Result<[String; 2], Failure> {
    let canon = classify(c)?;
    Ok([format!("{canon}={c}"), f.to_preorder()?.to_string()])
}

pub fn enumerate(a: &EnumerateArgs, force: bool) -> Outcome {
    let n = match (a.n, a.m) {
        (Some(n), None) => n,
        (None, Some(m)) if m >= 1 => m - 1,
        (None, Some(_)) => return Err(Failure::config("--m must be at least 1")),
        _ => return Err(Failure::config("one of --n or --m is required")),
    };
    if a.format == Format::Dot {
        return Err(Failure::config("enumerate writes json, jsonl or csv"));
    }
    if a.object == Object::Report {
        if a.format != Format::Json {
            return Err(Failure::config("the enumeration report is only written as json"));
        }
        return Ok(render(&enumeration::report(n, force)?));
    }
    check_rank(n, force)?;

    let pairs: Vec<(RootSet, QuasitrivialOp)> = match a.object {
        Object::Biclosed => enum_biclosed_classified(n)?
            .into_iter()
            .map(|c| Ok((c, biclosed_to_semigroup(&c)?)))
            .collect::<Result<_, Error>>()?,
        _ => enum_semigroups(n + 1)
            .into_iter()
            .map(|f| Ok((semigroup_to_biclosed(&f)?, f)))
            .collect::<Result<_, Error>>()?,
    };
    let item = |(c, f): &(RootSet, QuasitrivialOp)| {
        match a.object {
            Object::Biclosed => serde_json::to_value(c),
            _ => serde_json::to_value(f),
        }
        .expect("serializable")
    };

    match a.format {
        Format::Jsonl => Ok(pairs.iter().map(|p| item(p).to_string() + "\n").collect()),
        Format::Json => Ok(render(&pairs.iter().map(item).collect::<Vec<_>>())),
        _ => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure::new(2, "Io", e.to_string());
            w.write_record(["Biclosed set", "Quasitrivial semigroup structure"]).map_err(io)?;
            for (c, f) in &pairs {
                w.write_record(csv_row(c, f)?).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::new(2, "Io", e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn convert(a: &ConvertArgs) -> Outcome {
    match (read_input(&a.input)?, a.to) {
        (Input::Set(c), None | Some(Target::Semigroup)) => {
            let f = biclosed_to_semigroup(&c)?;
            let d = f.to_preorder()?;
            Ok(render(&json!({
                "semigroup": f,
                "canonical": classify(&c)?,
                "decomposition": d,
                "structure": d.to_string(),
            })))
        }
        (Input::Op(f), None | Some(Target::Biclosed)) => {
            let c = semigroup_to_biclosed(&f)?;
            let d = f.to_preorder()?;
            Ok(render(&json!({
                "biclosed": c,
                "roots": c.to_string(),
                "canonical": classify(&c)?,
                "decomposition": d,
                "structure": d.to_string(),
            })))
        }
        (Input::Set(_), Some(Target::Biclosed)) => Err(Failure::config("input is already a root set")),
        (Input::Op(_), Some(Target::Semigroup)) => Err(Failure::config("input is already a table")),
    }
}

pub fn check(a: &CheckArgs) -> Outcome {
    let f = read_op(&a.input)?;
    let mut out = json!({ "m": f.size() });
    let direct = matches!(a.via, Via::Direct | Via::Both).then(|| f.is_associative());
    let via_sets = match a.via {
        Via::Biclosed | Via::Both => Some(associative_via_biclosed(&f)?),
        Via::Direct => None,
    };
    if let Some(d) = direct {
        out["direct"] = json!(d);
        if let Some((x, y, z)) = f.associativity_violation() {
            out["triple"] = json!([x, y, z]);
        }
    }
    if let Some(b) = via_sets {
        out["biclosed"] = json!(b);
        if let Some(w) = biclosed_violation(&op_to_pairs(&f)?) {
            out["closure_witness"] = closure_json(&w);
        }
    }
    let verdict = direct.or(via_sets).expect("at least one method ran");
    out["associative"] = json!(verdict);
    if let (Some(d), Some(b)) = (direct, via_sets) {
        out["agree"] = json!(d == b);
        if d != b {
            let mut fail = Failure::new(6, "CrossCheckFailure", format!("direct says {d}, biclosedness says {b}"));
            fail.output = Some(render(&out));
            return Err(fail);
        }
    }
    Ok(render(&out))
}

pub fn classify_cmd(a: &InputArgs) -> Outcome {
    let c = read_set(a)?;
    let canon = classify(&c)?;
    let (pv, projections) = canon.position_vector()?;
    let stab = if c.rank() <= STABILIZER_LIMIT { Some(stabilizer(&c)?.len()) } else { None };
    Ok(render(&json!({
        "canonical": canon,
        "display": canon.to_string(),
        "roots": c.to_string(),
        "parabolic": canon.delta1.is_empty(),
        "horocyclic": canon.delta2.is_empty(),
        "positive_system": is_positive_system(&c),
        "position_vector": {
            "sizes": pv.sizes(),
            "positions": pv.positions(),
            "projections": projections.iter().map(|p| p.label()).collect::<Vec<_>>(),
            "order": order_string(&pv.interleave()),
        },
        "stabilizer_order": stab,
    })))
}

fn equivariance_holds(w: &Permutation, c: &RootSet) -> Result<bool, Failure> {
    let f = biclosed_to_semigroup(c)?;
    let moved = act_set(w, c);
    Ok(biclosed_to_semigroup(&moved)? == act_op(w, &f) && semigroup_to_biclosed(&act_op(w, &f))? == moved)
}

pub fn act(a: &ActArgs, force: bool) -> Outcome {
    if let Some(count) = a.random {
        return act_random(count, a.n.expect("clap requires --n"), a.seed, force);
    }
    let text = a.perm.as_deref().expect("clap requires --perm");
    let input = read_input(&a.input)?;
    let size = match &input {
        Input::Set(c) => c.points(),
        Input::Op(f) => f.size(),
    };
    let w = Permutation::parse(text, size)?;
    let mut out = json!({ "perm": perm_json(&w) });
    let set = match input {
        Input::Set(c) => {
            let moved = act_set(&w, &c);
            out["input"] = json!(c);
            out["output"] = json!(moved);
            out["roots"] = json!(moved.to_string());
            c
        }
        Input::Op(f) => {
            out["input"] = json!(f);
            out["output"] = json!(act_op(&w, &f));
            if !a.verify_equivariance {
                return Ok(render(&out));
            }
            semigroup_to_biclosed(&f)?
        }
    };
    if a.verify_equivariance {
        if !is_biclosed(&set) {
            return Err(Error::NotBiclosed(biclosed_violation(&set).expect("not biclosed")).into());
        }
        let ok = equivariance_holds(&w, &set)?;
        out["equivariance"] = json!({ "passed": ok });
        if !ok {
            let mut fail = Failure::new(6, "CrossCheckFailure", "F_{wC} differs from w·F_C");
            fail.output = Some(render(&out));
            return Err(fail);
        }
    }
    Ok(render(&out))
}

fn act_random(count: usize, n: usize, seed: u64, force: bool) -> Outcome {
    check_rank(n, force)?;
    let sets = enum_biclosed_classified(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let c = sets[rng.random_range(0..sets.len())];
        let mut images: Vec<usize> = (1..=n + 1).collect();
        images.shuffle(&mut rng);
        let w = Permutation::from_images(images)?;
        if !equivariance_holds(&w, &c)? {
            failures.push(json!({ "set": c, "perm": perm_json(&w) }));
        }
    }
    let out = json!({ "n": n, "seed": seed, "checked": count, "failures": failures, "passed": failures.is_empty() });
    if failures.is_empty() {
        Ok(render(&out))
    } else {
        let mut fail = Failure::new(6, "CrossCheckFailure", format!("{} equivariance failures", failures.len()));
        fail.output = Some(render(&out));
        Err(fail)
    }
}

pub fn poset(a: &PosetArgs, force: bool) -> Outcome {
    if !matches!(a.format, Format::Dot | Format::Json) {
        return Err(Failure::config("poset writes dot or json"));
    }
    let sets = enum_biclosed_bruteforce(a.n, force)?;
    let view = PosetView::new(sets.clone())?;

    if a.check_isomorphism || a.check_lattice {
        let mut out = json!({ "n": a.n, "elements": view.len(), "hasse_edges": view.hasse_edges().len() });
        let mut failed = None;
        if a.check_isomorphism {
            let r = view.check_isomorphism()?;
            out["isomorphism"] = json!({ "report": r, "passed": r.passed() });
            if !r.passed() {
                failed = Some(format!("{} of {} pairs disagree", r.pairs - r.agree, r.pairs));
            }
        }
        if a.check_lattice {
            match FiniteLattice::new(sets).check() {
                Ok(r) => out["lattice"] = json!({ "report": r, "passed": true }),
                Err(e) => {
                    out["lattice"] = json!({ "passed": false, "message": e.to_string() });
                    failed.get_or_insert(e.to_string());
                }
            }
        }
        let text = render(&out);
        return match failed {
            None => Ok(text),
            Some(msg) => Err(Failure { output: Some(text), ..Failure::new(7, "OrderCheckFailure", msg) }),
        };
    }

    match a.format {
        Format::Dot => Ok(view.to_dot()?),
        _ => {
            let elements = view
                .elements()
                .iter()
                .enumerate()
                .map(|(i, (c, f))| {
                    Ok(json!({
                        "id": i,
                        "set": c,
                        "canonical": classify(c)?.to_string(),
                        "structure": f.to_preorder()?.to_string(),
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(render(&json!({ "n": a.n, "elements": elements, "edges": view.hasse_edges() })))
        }
    }
}

pub fn verify_cmd(a: &VerifyArgs, force: bool) -> Outcome {
    let outcomes = verify::run_all(a.n, force)?;
    let criteria: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let mut v = json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail });
            if a.timings {
                v["elapsed_ms"] = json!(o.elapsed_ms);
                v["limit_ms"] = json!(o.limit_ms);
            }
            v
        })
        .collect();
    let passed = outcomes.iter().all(|o| o.passed);
    let text = render(&json!({ "n": a.n, "passed": passed, "criteria": criteria }));
    match outcomes.iter().find(|o| !o.passed) {
        None => Ok(text),
        Some(o) => {
            let mut fail =
                Failure::new(1, "CriterionFailed", format!("criterion {} ({}) failed: {}", o.id, o.name, o.detail));
            fail.body["criterion"] = json!(o.id);
            fail.output = Some(text);
            Err(fail)
        }
    }
}
