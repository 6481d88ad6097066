//! Named operation families built from a product `μ` and coproduct `Δ`:
//! iterated (co)products, the bar and cobar components, and signed tensor
//! powers.

use serde::{Deserialize, Serialize};

use crate::op::{MultiOp, Sign};

/// Global sign convention for the bar component `∂_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum BarSign {
    /// `∂_k = Σ (-1)^{i+1} μ_{i-1,k-i}`, the form used when the structure
    /// relations are evaluated (e.g. `∂₂ = μ⊗1 - 1⊗μ`).
    #[default]
    Relation,
    /// `∂_k = -Σ (-1)^{i+1} μ_{i-1,k-i}`, the bar-differential reading.
    Negated,
}

/// `1^{⊗before} ⊗ op ⊗ 1^{⊗after}`.
pub fn slot(op: &MultiOp, before: usize, after: usize) -> MultiOp {
    let mut factors = Vec::with_capacity(3);
    if before > 0 {
        factors.push(MultiOp::identity(before));
    }
    factors.push(op.clone());
    if after > 0 {
        factors.push(MultiOp::identity(after));
    }
    MultiOp::tensor(factors).expect("nonempty")
}

/// `op^{⊗k}`.
pub fn tensor_power(op: &MultiOp, k: usize) -> MultiOp {
    assert!(k >= 1, "tensor power needs k >= 1");
    MultiOp::tensor(vec![op.clone(); k]).expect("nonempty")
}

/// `fⁿ = (Δ⊗1^{⊗n-2})⋯(Δ⊗1)Δ`, with `f¹ = 1`.
pub fn iterated_coproduct(delta: &MultiOp, n: usize) -> MultiOp {
    iterate_coproduct(delta, n, |k| slot(delta, 0, k)).with_label(format!("f{n}"))
}

/// `fⁿ = (1^{⊗n-2}⊗Δ)⋯(1⊗Δ)Δ`.
pub fn iterated_coproduct_right(delta: &MultiOp, n: usize) -> MultiOp {
    iterate_coproduct(delta, n, |k| slot(delta, k, 0))
}

fn iterate_coproduct(delta: &MultiOp, n: usize, step: impl Fn(usize) -> MultiOp) -> MultiOp {
    assert!(n >= 1);
    if n == 1 {
        return MultiOp::identity(1);
    }
    // written order: the widest stage is applied last
    let stages: Vec<MultiOp> = (0..n - 1).rev().map(|k| if k == 0 { delta.clone() } else { step(k) }).collect();
    MultiOp::compose(stages).expect("coproduct stages chain")
}

/// `g_m = μ(μ⊗1)⋯(μ⊗1^{⊗m-2})`, with `g₁ = 1`.
pub fn iterated_product(mu: &MultiOp, m: usize) -> MultiOp {
    iterate_product(mu, m, |k| slot(mu, 0, k)).with_label(format!("g{m}"))
}

/// `g_m = μ(1⊗μ)⋯(1^{⊗m-2}⊗μ)`.
pub fn iterated_product_right(mu: &MultiOp, m: usize) -> MultiOp {
    iterate_product(mu, m, |k| slot(mu, k, 0))
}

fn iterate_product(mu: &MultiOp, m: usize, step: impl Fn(usize) -> MultiOp) -> MultiOp {
    assert!(m >= 1);
    if m == 1 {
        return MultiOp::identity(1);
    }
    let stages: Vec<MultiOp> = (0..m - 1).map(|k| if k == 0 { mu.clone() } else { step(k) }).collect();
    MultiOp::compose(stages).expect("product stages chain")
}

/// `δᵏ = Σ_{i=1}^{k} (-1)^{i+1} Δ_{i-1,k-i}`: `H^{⊗k} → H^{⊗k+1}`.
pub fn cobar_component(delta: &MultiOp, k: usize) -> MultiOp {
    assert!(k >= 1);
    let terms = (1..=k)
        .map(|i| MultiOp::scaled(Sign::pow(i as i64 + 1), slot(delta, i - 1, k - i)))
        .collect();
    MultiOp::sum(terms).expect("uniform arity").with_label(format!("δ{k}"))
}

/// `∂_k`: `H^{⊗k+1} → H^{⊗k}`, alternating sum of single-slot products with
/// the global sign fixed by `convention`.
pub fn bar_component(mu: &MultiOp, k: usize, convention: BarSign) -> MultiOp {
    assert!(k >= 1);
    let global = match convention {
        BarSign::Relation => Sign::Plus,
        BarSign::Negated => Sign::Minus,
    };
    let terms = (1..=k)
        .map(|i| MultiOp::scaled(global.times(Sign::pow(i as i64 + 1)), slot(mu, i - 1, k - i)))
        .collect();
    MultiOp::sum(terms).expect("uniform arity").with_label(format!("∂{k}"))
}

/// Which structure map a signed power is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerOf {
    Product,
    Coproduct,
}

/// `(-1)^{⌊(k+1)/2⌋} μ^{⊗k}` or `(-1)^{⌊k/2⌋} Δ^{⊗k}`.
pub fn signed_power(op: &MultiOp, which: PowerOf, k: usize) -> MultiOp {
    MultiOp::scaled(signed_power_sign(which, k), tensor_power(op, k))
}

/// The sign attached by [`signed_power`].
pub fn signed_power_sign(which: PowerOf, k: usize) -> Sign {
    let k = k as i64;
    match which {
        PowerOf::Product => Sign::pow((k + 1) / 2),
        PowerOf::Coproduct => Sign::pow(k / 2),
    }
}

/// `-(-1)^n`.
pub(crate) fn minus_pow(n: usize) -> Sign {
    Sign::pow(n as i64 + 1)
}
