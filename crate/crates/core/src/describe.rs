//! A line-oriented text format describing a structure to verify.
//!
//! ```text
//! # comments start with '#'
//! name ex1
//! ring Z2                      # or: Q, exterior Z2 <p>, exterior Q <p>
//! generator y -2               # one line per generator
//! type 2 3
//! degree 2                     # optional; inferred from the entries
//! omega y|y -> y|1|1 + 1|1|y   # unlisted words map to zero
//! product trivial              # default; or one line per entry: product y|y -> 0
//! coproduct primitive          # default; or: coproduct y -> 1|y + y|1
//! ```
//!
//! Product and coproduct tables are accepted as written; the Hopf axioms are
//! left to the verifier so that a failing file produces reports rather than
//! a parse error.

use std::sync::Arc;

use crate::element::{Degree, Element};
use crate::error::{Error, Result};
use crate::hopf::{primitive_coproduct, trivial_product, HopfStructure};
use crate::op::MultiOp;
use crate::ring::{BaseRing, Ring};
use crate::space::{GeneratorTable, Space, Word};

#[derive(Default)]
struct Draft {
    name: Option<String>,
    ring: Option<Ring>,
    generators: Vec<(String, i64)>,
    shape: Option<(usize, usize)>,
    degree: Option<i64>,
    omega: Vec<(usize, String, String)>,
    product: Option<Vec<(usize, String, String)>>,
    coproduct: Option<Vec<(usize, String, String)>>,
}

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn number<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| err(line, format!("expected a number, found `{s}`")))
}

fn base_ring(line: usize, s: &str) -> Result<BaseRing> {
    match s {
        "Z2" => Ok(BaseRing::Z2),
        "Q" => Ok(BaseRing::Rationals),
        _ => Err(err(line, format!("unknown base ring `{s}` (expected Z2 or Q)"))),
    }
}

fn entry(line: usize, rest: &str) -> Result<(usize, String, String)> {
    let (lhs, rhs) = rest
        .split_once("->")
        .ok_or_else(|| err(line, "expected `<word> -> <element>`"))?;
    Ok((line, lhs.trim().to_string(), rhs.trim().to_string()))
}

/// Parses a structure description.
pub fn parse(text: &str) -> Result<HopfStructure> {
    let mut d = Draft::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        let args: Vec<&str> = rest.split_whitespace().collect();
        match key {
            "name" => d.name = Some(rest.to_string()),
            "ring" => {
                let ring = match args.as_slice() {
                    ["Z2"] => Ring::Z2,
                    ["Q"] => Ring::Rationals,
                    ["exterior", base, p] => {
                        let p: i64 = number(line, p)?;
                        if p < 1 {
                            return Err(err(line, "the exterior generator needs degree ≥ 1"));
                        }
                        Ring::exterior(base_ring(line, base)?, p)
                    }
                    _ => return Err(err(line, "expected `ring Z2`, `ring Q` or `ring exterior <Z2|Q> <p>`")),
                };
                d.ring = Some(ring);
            }
            "generator" => match args.as_slice() {
                [name, deg] => d.generators.push((name.to_string(), number(line, deg)?)),
                _ => return Err(err(line, "expected `generator <name> <degree>`")),
            },
            "type" => match args.as_slice() {
                [m, n] => d.shape = Some((number(line, m)?, number(line, n)?)),
                _ => return Err(err(line, "expected `type <m> <n>`")),
            },
            "degree" => match args.as_slice() {
                [deg] => d.degree = Some(number(line, deg)?),
                _ => return Err(err(line, "expected `degree <d>`")),
            },
            "omega" => d.omega.push(entry(line, rest)?),
            "product" | "coproduct" => {
                let slot = if key == "product" { &mut d.product } else { &mut d.coproduct };
                let default = if key == "product" { "trivial" } else { "primitive" };
                if rest == default {
                    if slot.as_ref().is_some_and(|v| !v.is_empty()) {
                        return Err(err(line, format!("`{key} {default}` mixed with explicit entries")));
                    }
                    *slot = Some(Vec::new());
                } else {
                    slot.get_or_insert_with(Vec::new).push(entry(line, rest)?);
                }
            }
            _ => return Err(err(line, format!("unknown directive `{key}`"))),
        }
    }
    build(d)
}

fn table(
    space: &Arc<Space>,
    inputs: usize,
    outputs: usize,
    degree: Option<i64>,
    fallback: i64,
    entries: &[(usize, String, String)],
) -> Result<MultiOp> {
    let mut parsed = Vec::with_capacity(entries.len());
    for (line, lhs, rhs) in entries {
        let word = space.parse_word(lhs).map_err(|e| err(*line, e))?;
        if word.len() != inputs {
            return Err(err(*line, format!("`{lhs}` has {} letters, expected {inputs}", word.len())));
        }
        let image = Element::parse_with_arity(space, outputs, rhs).map_err(|e| err(*line, e))?;
        parsed.push((*line, word, image));
    }
    let degree = match degree {
        Some(d) => d,
        None => infer_degree(space, &parsed)?.unwrap_or(fallback),
    };
    let (lines, pairs): (Vec<usize>, Vec<(Word, Element)>) =
        parsed.into_iter().map(|(l, w, e)| (l, (w, e))).unzip();
    MultiOp::table(space, inputs, outputs, degree, pairs).map_err(|e| match e {
        Error::DegreeShift { .. } => err(lines.first().copied().unwrap_or(0), e),
        other => other,
    })
}

/// Degree shift read off the first nonzero, homogeneous entry.
fn infer_degree(space: &Arc<Space>, entries: &[(usize, Word, Element)]) -> Result<Option<i64>> {
    for (line, word, image) in entries {
        if image.is_zero() {
            continue;
        }
        return match image.degree()? {
            Degree::Homogeneous(d) => Ok(Some(d - space.word_degree(word.letters()))),
            Degree::Mixed => Err(err(*line, "image is not homogeneous")),
        };
    }
    Ok(None)
}

fn build(d: Draft) -> Result<HopfStructure> {
    let ring = d.ring.ok_or_else(|| Error::Parse("missing `ring` line".into()))?;
    if d.generators.is_empty() {
        return Err(Error::Parse("at least one `generator` line is required".into()));
    }
    let (m, n) = d.shape.ok_or_else(|| Error::Parse("missing `type <m> <n>` line".into()))?;
    if m < 1 || n < 1 {
        return Err(Error::Parse("type arities must be at least 1".into()));
    }
    let space = Space::new(ring, GeneratorTable::new(&d.generators)?);
    let product = match d.product.as_deref() {
        None | Some([]) => trivial_product(&space)?,
        Some(entries) => table(&space, 2, 1, Some(0), 0, entries)?,
    };
    let coproduct = match d.coproduct.as_deref() {
        None | Some([]) => primitive_coproduct(&space)?,
        Some(entries) => table(&space, 1, 2, Some(0), 0, entries)?,
    };
    let omega = table(&space, m, n, d.degree, (m + n) as i64 - 3, &d.omega)?;
    let name = d.name.unwrap_or_else(|| "structure".to_string());
    HopfStructure::new_unchecked(name, &space, product, coproduct)?.with_omega(omega)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: &str = "\
# the (2,3) example
name ex1-file
ring Z2
generator y -2
type 2 3
omega y|y -> y|1|1 + 1|1|y
";

    #[test]
    fn parses_ex1() {
        let h = parse(EX1).unwrap();
        assert_eq!(h.name(), "ex1-file");
        let w = h.omega().unwrap();
        assert_eq!((w.m, w.n, w.op.degree()), (2, 3, 2));
    }

    #[test]
    fn infers_degree_of_a_wrong_omega() {
        let h = parse("ring Z2\ngenerator y 1\ntype 2 2\nomega y|y -> y|y\n").unwrap();
        assert_eq!(h.omega().unwrap().op.degree(), 0);
    }

    #[test]
    fn exterior_rings_and_coefficients() {
        let h = parse("ring exterior Q 1\ngenerator y 1\ntype 2 3\nomega y|y -> x*y|y|y\n").unwrap();
        assert_eq!(h.omega().unwrap().op.degree(), 2);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse("ring Z2\ngenerator y 1\ntype 2 3\nomega y|z -> y|y|y\n").unwrap_err();
        assert!(e.to_string().contains("line 4"), "{e}");
        let e = parse("ring Z3\n").unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
        assert!(parse("generator y 1\ntype 2 2\n").is_err());
    }

    #[test]
    fn inconsistent_degrees_are_rejected() {
        let text = "ring Z2\ngenerator y 1\ntype 2 3\nomega y|y -> y|y|y\nomega 1|y -> y|y|y\n";
        assert!(parse(text).is_err());
    }
}
