//! Stable text and JSON renderings of verification results.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::catalog::TypeParams;
use crate::relations::{RelationReport, Verification};

fn number(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(v) => json!(v),
        Err(_) => json!(v.to_string()),
    }
}

pub fn report_json(r: &RelationReport) -> Value {
    let space = r.witness.as_ref().map(|w| w.lhs.space().clone());
    json!({
        "relation": r.relation.to_string(),
        "mode": r.mode.to_string(),
        "passed": r.passed,
        "basisSize": number(r.basis_size),
        "evaluated": number(r.evaluated),
        "terms": r.terms,
        "witness": r.witness.as_ref().map(|w| json!({
            "input": space.as_ref().expect("witness has a space").format_word(&w.input),
            "lhs": w.lhs.to_string(),
            "rhs": w.rhs.to_string(),
            "term": w.term,
        })),
    })
}

pub fn verification_json(v: &Verification) -> Value {
    json!({
        "structure": v.structure,
        "type": { "m": v.degree.m, "n": v.degree.n },
        "degree": {
            "required": v.degree.required,
            "found": v.degree.found,
            "passed": v.degree.passed(),
        },
        "relations": v.reports.iter().map(report_json).collect::<Vec<_>>(),
        "passed": v.passed(),
    })
}

pub fn report_text(r: &RelationReport) -> String {
    let mut out = format!(
        "{:<8}{:<10}{:<6}basis {}  evaluated {}  terms {}",
        r.relation.to_string(),
        r.mode.to_string(),
        if r.passed { "PASS" } else { "FAIL" },
        r.basis_size,
        r.evaluated,
        r.terms
    );
    if let Some(w) = &r.witness {
        let space = w.lhs.space();
        let _ = write!(out, "\n  witness: {}", space.format_word(&w.input));
        if let Some(term) = &w.term {
            let _ = write!(out, "\n  term:    {term}");
        }
        let _ = write!(out, "\n  lhs:     {}\n  rhs:     {}", w.lhs, w.rhs);
    }
    out
}

pub fn verification_text(v: &Verification) -> String {
    let d = &v.degree;
    let mut out = format!(
        "structure {}\ntype ({},{})\ndegree |ω| = {}, required m+n-3 = {}: {}\n",
        v.structure,
        d.m,
        d.n,
        d.found,
        d.required,
        if d.passed() { "ok" } else { "FAIL" }
    );
    for r in &v.reports {
        out.push_str(&report_text(r));
        out.push('\n');
    }
    out.push_str(if v.passed() { "result PASS\n" } else { "result FAIL\n" });
    out
}

pub fn types_json(types: &[TypeParams]) -> Value {
    json!(types
        .iter()
        .map(|t| json!({ "m": t.m, "n": t.n, "p": t.p, "q": t.q, "case": t.case.to_string() }))
        .collect::<Vec<_>>())
}

/// One row per tuple; `q(n)` is shown where it is defined (`n ≠ m`).
pub fn types_text(types: &[TypeParams]) -> String {
    let mut out = String::from("m   n   p   q   case    q(n)\n");
    for t in types {
        let qn = crate::catalog::q_of_n(t.m, t.p, t.n)
            .map(|q| q.to_string())
            .unwrap_or_else(|_| "-".into());
        let _ = writeln!(
            out,
            "{:<4}{:<4}{:<4}{:<4}{:<8}{}",
            t.m,
            t.n,
            t.p,
            t.q,
            t.case.to_string(),
            qn
        );
    }
    out
}
