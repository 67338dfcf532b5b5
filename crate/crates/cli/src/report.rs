//! Text and JSON renderings of command results.

use std::collections::BTreeMap;
use std::fmt::{Display, Write};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use jacquet_core::classify::{DPSParams, Factor, Verdict};
use jacquet_core::engine::FormalSum;
use jacquet_core::harness::{ClaimResult, Status, SweepReport};
use jacquet_core::aubert::DualCheck;
use jacquet_core::word::{GAtom, GLTensorSum, GWord, MuSum};

pub const SCHEMA_VERSION: &str = "1";

pub struct Emit {
    pub text: String,
    pub json: Value,
    pub warnings: Vec<String>,
    pub failed: bool,
}

impl Emit {
    fn new(text: String, json: Value) -> Self {
        Emit { text, json, warnings: Vec::new(), failed: false }
    }
}

pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }
}

fn coeff(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(n) => json!(n),
        None => json!(c.to_string()),
    }
}

fn sum_text<B: Ord + Clone + Display>(s: &FormalSum<B>) -> String {
    if s.is_zero() {
        return "0\n".into();
    }
    let mut out = String::new();
    for (b, c) in s.iter() {
        let _ = writeln!(out, "{c:>+4}  {b}");
    }
    out
}

pub fn m_star(input: &str, s: &GLTensorSum) -> Emit {
    let terms: Vec<Value> = s
        .iter()
        .map(|(t, c)| json!({"coeff": coeff(c), "left": t.0.to_string(), "right": t.1.to_string()}))
        .collect();
    Emit::new(
        sum_text(s),
        json!({"schema_version": SCHEMA_VERSION, "command": "m-star", "input": input, "terms": terms}),
    )
}

pub fn mu_star(input: &str, s: &MuSum) -> Emit {
    let terms: Vec<Value> = s
        .iter()
        .map(|(t, c)| json!({"coeff": coeff(c), "left": t.0.to_string(), "right": t.1.to_string()}))
        .collect();
    Emit::new(
        sum_text(s),
        json!({"schema_version": SCHEMA_VERSION, "command": "mu-star", "input": input, "terms": terms}),
    )
}

pub fn aubert(input: &str, sign: i8, hat: &GWord) -> Emit {
    let text = format!("sign {}\n{hat}\n", if sign < 0 { "-" } else { "+" });
    Emit::new(
        text,
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": "aubert",
            "input": input,
            "method": "factorwise",
            "sign": sign,
            "hat": hat.to_string(),
        }),
    )
}

pub fn aubert_bruteforce(input: &str, d: &DualCheck) -> Emit {
    let terms: Vec<Value> = d.signed.iter().map(|(w, c)| json!({"coeff": coeff(c), "word": w.to_string()})).collect();
    let mut text = String::from("alternating sum, zeta factors written through deltas:\n");
    text.push_str(&sum_text(&d.signed));
    match d.sign {
        Some(s) => {
            let _ = writeln!(text, "= {} {}", if s < 0 { "-" } else { "+" }, d.hat);
            let _ = writeln!(text, "factorwise dual agrees");
        }
        None => {
            let _ = writeln!(text, "factorwise dual {} DISAGREES", d.hat);
        }
    }
    let mut e = Emit::new(
        text,
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": "aubert",
            "input": input,
            "method": "bruteforce",
            "sign": d.sign.unwrap_or(0),
            "hat": d.hat.to_string(),
            "terms": terms,
            "matches_factorwise": d.sign.is_some(),
        }),
    );
    e.failed = d.sign.is_none();
    e
}

#[derive(Serialize)]
struct Params {
    family: &'static str,
    same: bool,
    alpha: String,
    beta: String,
    a: String,
    b: String,
    x: String,
}

fn params(p: &DPSParams) -> Params {
    Params {
        family: p.amb.family.name(),
        same: p.same,
        alpha: p.alpha.to_string(),
        beta: p.beta.to_string(),
        a: p.a.to_string(),
        b: p.b.to_string(),
        x: p.x.to_string(),
    }
}

fn atom(a: &GAtom) -> Value {
    match a {
        GAtom::Cuspidal(s) => json!({"name": s.label.to_string(), "origin": "cuspidal", "condition": null}),
        GAtom::Tempered(t) => json!({"name": t.name, "origin": t.origin, "condition": t.condition}),
    }
}

fn factor(f: &Factor) -> Value {
    match f {
        Factor::Langlands(l) => json!({
            "kind": "langlands",
            "text": f.to_string(),
            "deltas": l.deltas.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "tempered": atom(&l.tempered),
        }),
        Factor::Tempered(t) => json!({
            "kind": "tempered",
            "text": f.to_string(),
            "deltas": Vec::<String>::new(),
            "tempered": atom(t),
        }),
    }
}

pub fn dps(input: &DPSParams, swapped: bool, v: &Verdict, warnings: Vec<String>) -> Emit {
    let verdict = if v.is_irreducible() { "irreducible" } else { "reducible" };
    let mut text = format!("{input}\n");
    if swapped {
        let _ = writeln!(text, "normalized to -a <= b: {}", v.params);
    }
    let _ = writeln!(text, "{verdict} [{}] {}", v.case, v.rule);
    for f in v.factors() {
        let _ = writeln!(text, "  {f}");
    }
    let j = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "dps",
        "params": params(input),
        "normalized": params(&v.params),
        "verdict": verdict,
        "length": v.factor_count(),
        "factors": v.factors().iter().map(factor).collect::<Vec<_>>(),
        "citations": [{"case": v.case, "rule": v.rule}],
    });
    let mut e = Emit::new(text, j);
    e.warnings = warnings;
    e
}

fn status_detail(s: &Status) -> Option<String> {
    match s {
        Status::Pass => None,
        Status::Fail { diff } => Some(diff.clone()),
        Status::Assumed { imported } => Some(imported.clone()),
    }
}

pub fn verify(results: &[ClaimResult], swept: Option<&(String, SweepReport)>) -> Emit {
    let mut counts: BTreeMap<&str, usize> = [("pass", 0), ("fail", 0), ("assumed", 0)].into();
    let mut text = String::new();
    let mut claims = Vec::new();
    for r in results {
        *counts.entry(r.status.name()).or_default() += 1;
        let detail = status_detail(&r.status);
        let _ = write!(text, "{:<8} {:<28} {}", r.status.name(), r.id, r.anchor);
        if let Some(d) = &detail {
            let _ = write!(text, "\n         {d}");
        }
        text.push('\n');
        claims.push(json!({
            "id": r.id,
            "kind": r.kind.name(),
            "family": r.family.name(),
            "anchor": r.anchor,
            "status": r.status.name(),
            "detail": detail,
        }));
    }
    let _ = writeln!(
        text,
        "claims: {} pass, {} fail, {} assumed",
        counts["pass"], counts["fail"], counts["assumed"]
    );
    let grid = swept.map(|(spec, s)| {
        let _ = writeln!(
            text,
            "grid {spec}: {} tuples, {} irreducible, longest verdict {}, {} case ids, {} leading terms found, {} failures, {} errors",
            s.tuples,
            s.irreducible,
            s.max_size,
            s.cases.len(),
            s.leading_checked,
            s.failures.len(),
            s.errors.len()
        );
        for f in s.failures.iter().take(20) {
            let _ = writeln!(text, "  FAIL {} [{}]", f.params, f.case);
        }
        for e in s.errors.iter().take(20) {
            let _ = writeln!(text, "  ERROR {e}");
        }
        json!({
            "spec": spec,
            "tuples": s.tuples,
            "irreducible": s.irreducible,
            "max_length": s.max_size,
            "leading_terms_found": s.leading_checked,
            "cases": s.cases,
            "failures": s.failures.iter().map(|f| json!({
                "params": f.params,
                "case": f.case,
                "length_ok": f.size_ok,
                "distinct": f.distinct,
                "factors": f.factors.iter().map(|c| json!({
                    "factor": c.factor,
                    "balanced": c.balanced,
                    "leading": format!("{:?}", c.leading),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "errors": s.errors,
        })
    });
    Emit::new(
        text,
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "claims": claims,
            "summary": counts,
            "grid": grid,
        }),
    )
}
