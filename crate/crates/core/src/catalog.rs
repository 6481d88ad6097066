//! Example structures and the arithmetic deciding for which `(m,n,p,q)`
//! the operation `ω(y|⋯|y) = x·y|⋯|y` over `E(x)`, `|x| = p`, `|y| = q`,
//! has degree `m+n-3`.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::hopf::HopfStructure;
use crate::op::MultiOp;
use crate::ring::{BaseRing, Ring, Scalar};
use crate::space::{GeneratorTable, Space, Word};

/// `m(q+1) = n(q-1) + p + 3`, i.e. `|ω| = m+n-3`.
pub fn degree_condition(m: usize, n: usize, p: usize, q: usize) -> bool {
    let (m, n, p, q) = (m as i64, n as i64, p as i64, q as i64);
    m * (q + 1) == n * (q - 1) + p + 3
}

/// `q(n) = (p-m-n+3)/(m-n)`.
pub fn q_of_n(m: usize, p: usize, n: usize) -> Result<Rational64> {
    if m == n {
        return Err(Error::NotApplicable(format!("q(n) is undefined at n = m = {m}")));
    }
    let (m, n, p) = (m as i64, n as i64, p as i64);
    Ok(Rational64::new(p - m - n + 3, m - n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// `m = n = 2`, `p = 1`, `q ≥ 2`.
    I,
    /// `m ≥ 2`, `p = 2m-3`, `q = 1`.
    Ii,
    /// `m ≥ 3`, `m+1 ≤ n ≤ 3m-p-3`, `1 ≤ p ≤ 2m-4`, `q = q(n)`.
    Iii,
    /// Satisfies the degree condition outside the three cases
    /// (`m = n ≥ 3`, `p = 2m-3`, `q ≥ 2`).
    Custom,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "i",
            Case::Ii => "ii",
            Case::Iii => "iii",
            Case::Custom => "custom",
        })
    }
}

/// The case of `(m,n,p,q)`, or `None` when the degree condition fails or the
/// type is excluded (`m < 2`, `m+n < 4`, or a zero parameter).
pub fn classify(m: usize, n: usize, p: usize, q: usize) -> Option<Case> {
    if m < 2 || n < 1 || p < 1 || q < 1 || m + n < 4 || !degree_condition(m, n, p, q) {
        return None;
    }
    if m == 2 && n == 2 && p == 1 && q >= 2 {
        return Some(Case::I);
    }
    if p + 3 == 2 * m && q == 1 {
        return Some(Case::Ii);
    }
    if m >= 3 && m < n && n + p + 3 <= 3 * m && p + 4 <= 2 * m && q >= 2 {
        return Some(Case::Iii);
    }
    Some(Case::Custom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeParams {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub case: Case,
}

impl TypeParams {
    pub fn new(m: usize, n: usize, p: usize, q: usize) -> Result<TypeParams> {
        let case = classify(m, n, p, q).ok_or_else(|| {
            Error::Inadmissible(format!(
                "(m,n,p,q) = ({m},{n},{p},{q}) does not give |ω| = m+n-3 with m ≥ 2 and m+n ≥ 4"
            ))
        })?;
        Ok(TypeParams { m, n, p, q, case })
    }
}

impl fmt::Display for TypeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{}) case {}", self.m, self.n, self.p, self.q, self.case)
    }
}

/// Bounds for [`enumerate_types`]. Case (i) has unbounded `q` and case (ii)
/// unbounded `n`, so both are capped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationWindow {
    pub m_max: usize,
    pub q_cap: usize,
    /// Largest `n`; defaults to `3m-3` for each `m`, which contains every
    /// case (iii) value.
    pub n_max: Option<usize>,
}

impl EnumerationWindow {
    pub fn new(m_max: usize, q_cap: usize) -> EnumerationWindow {
        EnumerationWindow { m_max, q_cap, n_max: None }
    }

    pub fn n_max_for(&self, m: usize) -> usize {
        self.n_max.unwrap_or(3 * m - 3)
    }
}

/// Every admissible `(m,n,p,q)` with `2 ≤ m ≤ m_max`, `p ≤ 2m-3`,
/// `q ≤ q_cap` and `n ≤ n_max`, sorted, built from the case formulas.
pub fn enumerate_types(window: EnumerationWindow) -> Vec<TypeParams> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<TypeParams>, m, n, p, q| {
        if q <= window.q_cap && n <= window.n_max_for(m) && m + n >= 4 {
            out.push(TypeParams::new(m, n, p, q).expect("case formulas satisfy the degree condition"));
        }
    };
    for m in 2..=window.m_max {
        if m == 2 {
            for q in 2..=window.q_cap {
                push(&mut out, 2, 2, 1, q);
            }
        }
        for n in 1..=window.n_max_for(m) {
            push(&mut out, m, n, 2 * m - 3, 1);
        }
        if m >= 3 {
            for p in 1..=2 * m - 4 {
                for n in m + 1..=3 * m - p - 3 {
                    let q = q_of_n(m, p, n).expect("n > m");
                    if q.is_integer() {
                        push(&mut out, m, n, p, *q.numer() as usize);
                    }
                }
            }
            for q in 2..=window.q_cap {
                push(&mut out, m, m, 2 * m - 3, q);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn y_space(ring: Ring, q: i64) -> Arc<Space> {
    Space::new(ring, GeneratorTable::new(&[("y", q)]).expect("y is a valid name"))
}

/// `H = ⟨y⟩` over `Z2` with `|y| = -2`, trivial product, primitive
/// coproduct and `ω(y|y) = y|1|1 + 1|1|y` of type `(2,3)`.
pub fn make_ex1() -> HopfStructure {
    let h = y_space(Ring::Z2, -2);
    let image = Element::parse_with_arity(&h, 3, "y|1|1 + 1|1|y").expect("literal parses");
    let omega = MultiOp::table(&h, 2, 3, 2, vec![(h.parse_word("y|y").expect("word"), image)]).expect("degree 2");
    HopfStructure::trivial("ex1", &h)
        .and_then(|s| s.with_omega(omega))
        .expect("ex1 is a Hopf algebra")
}

/// `H = E(y)` over `E(x)` with `|x| = p`, `|y| = q`, trivial product,
/// primitive coproduct and `ω(y|⋯|y) = x·y|⋯|y`.
///
/// Fails with [`Error::NotHopf`] over `Q` when `q` is even: then
/// `Δμ(y|y) = 0` while `(μ⊗μ)σ_{2,2}(Δ⊗Δ)(y|y) = 2 y|y`.
pub fn make_theorem1(params: TypeParams, base: BaseRing) -> Result<HopfStructure> {
    let TypeParams { m, n, p, q, .. } = params;
    let ring = Ring::exterior(base, p as i64);
    let h = y_space(ring, q as i64);
    let y = h.generators().letter("y")?;
    let image = Element::monomial(&h, Word::new(vec![y; n]), Scalar::x(ring)?)?;
    let omega = MultiOp::table(&h, m, n, (m + n) as i64 - 3, vec![(Word::new(vec![y; m]), image)])?;
    HopfStructure::trivial(format!("theorem1({m},{n},{p},{q})"), &h)?.with_omega(omega)
}
