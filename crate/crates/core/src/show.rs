//! A small prefix language for evaluating named operations of a structure,
//! e.g. `delta3(omega(y|y))` or `f3(y)`.
//!
//! Names: `mu`, `Delta`, `omega`, `f<n>`, `g<m>`, `delta<k>`, `bar<k>` (or
//! `partial<k>`), `sigma<q>_<p>` and `id<k>`. An argument is either another
//! application or an element literal such as `y|1 + 1|y`.

use crate::calculus::BarSign;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::hopf::HopfStructure;
use crate::op::MultiOp;

fn index(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok().filter(|&k| k >= 1)
}

/// Resolves an operation name.
pub fn resolve(h: &HopfStructure, name: &str, bar: BarSign) -> Result<MultiOp> {
    let unknown = || Error::Parse(format!("unknown operation `{name}`"));
    match name {
        "mu" => return Ok(h.product().clone()),
        "Delta" => return Ok(h.coproduct().clone()),
        "omega" => {
            return h
                .omega()
                .map(|w| w.op.clone())
                .ok_or_else(|| Error::MalformedOp("the structure has no ω operation".into()))
        }
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("sigma") {
        let (q, p) = rest.split_once('_').ok_or_else(unknown)?;
        let q: usize = q.parse().map_err(|_| unknown())?;
        let p: usize = p.parse().map_err(|_| unknown())?;
        if q == 0 || p == 0 {
            return Err(unknown());
        }
        return Ok(MultiOp::sigma(q, p));
    }
    // longest prefixes first: `delta` before `f`, `partial` before `id`
    if let Some(k) = index(name, "delta") {
        return Ok(h.cobar(k));
    }
    if let Some(k) = index(name, "bar").or_else(|| index(name, "partial")) {
        return Ok(h.bar(k, bar));
    }
    if let Some(k) = index(name, "id") {
        return Ok(MultiOp::identity(k));
    }
    if let Some(n) = index(name, "f") {
        return Ok(h.f(n));
    }
    if let Some(m) = index(name, "g") {
        return Ok(h.g(m));
    }
    Err(unknown())
}

/// Evaluates `expr` against `h`.
pub fn evaluate(h: &HopfStructure, expr: &str, bar: BarSign) -> Result<Element> {
    let expr = expr.trim();
    let open = expr
        .find('(')
        .ok_or_else(|| Error::Parse(format!("expected `name(argument)`, found `{expr}`")))?;
    if !expr.ends_with(')') {
        return Err(Error::Parse(format!("unbalanced parentheses in `{expr}`")));
    }
    let name = expr[..open].trim();
    let inner = &expr[open + 1..expr.len() - 1];
    let mut depth = 0i32;
    for c in inner.chars() {
        depth += match c {
            '(' => 1,
            ')' => -1,
            _ => 0,
        };
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in `{expr}`")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{expr}`")));
    }
    let op = resolve(h, name, bar)?;
    let arg = if inner.contains('(') {
        evaluate(h, inner, bar)?
    } else {
        Element::parse_with_arity(h.space(), op.inputs(), inner)?
    };
    op.apply(&arg)
}
