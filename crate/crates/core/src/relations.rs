//! The structure relations of an A∞-bialgebra of type `(m,n)` as operation
//! expressions, and their exact verification.
//!
//! Relations 1 and 2 and the Hopf axioms are equations with fully known
//! signs. Relations 3–6 are vanishing sums whose signs are only partly
//! known; they are checked either as a whole (signs that are unknown are
//! taken as `+`, which is only meaningful in characteristic 2) or term by
//! term.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::{self, BarSign};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::hopf::{HopfStructure, Omega};
use crate::op::{MultiOp, Sign};
use crate::space::{Space, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationId {
    Assoc,
    Coassoc,
    Hopf,
    R1,
    R2,
    R3,
    R4a,
    R4b,
    R4c,
    R4d,
    R5a,
    R5b,
    R5c,
    R5d,
    R6,
}

impl RelationId {
    pub const ALL: [RelationId; 15] = [
        RelationId::Assoc,
        RelationId::Coassoc,
        RelationId::Hopf,
        RelationId::R1,
        RelationId::R2,
        RelationId::R3,
        RelationId::R4a,
        RelationId::R4b,
        RelationId::R4c,
        RelationId::R4d,
        RelationId::R5a,
        RelationId::R5b,
        RelationId::R5c,
        RelationId::R5d,
        RelationId::R6,
    ];

    /// Whether the relation exists for type `(m,n)`.
    pub fn applies(self, m: usize, n: usize) -> bool {
        use RelationId::*;
        match self {
            R4a | R4b | R4c | R4d => m == 2,
            R5a | R5b | R5c | R5d => n == 2,
            R6 => m == 2 && n == 2,
            _ => true,
        }
    }

    /// Relations checked in the caller's mode; the rest are always exact.
    pub fn uses_mode(self) -> bool {
        !matches!(
            self,
            RelationId::Assoc | RelationId::Coassoc | RelationId::Hopf | RelationId::R1 | RelationId::R2
        )
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum VerificationMode {
    /// Compare the full sums; unknown signs count as `+`.
    #[default]
    Exact,
    /// Require every term of a vanishing family to be the zero operation.
    TermwiseZero,
}

impl fmt::Display for VerificationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerificationMode::Exact => "exact",
            VerificationMode::TermwiseZero => "termwise",
        })
    }
}

/// Which rendition of Relation 2 to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Rel2Convention {
    /// `ω∂_m = μ^{⊗n}σ_{n,2}(fⁿ⊗ω - (-1)^m ω⊗fⁿ)`.
    #[default]
    Definition,
    /// `ω∂_m = (-1)^{⌊(n+1)/2⌋} μ^{⊗n}σ_{n,2}(ω⊗fⁿ - (-1)^m fⁿ⊗ω)`.
    Display,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Conventions {
    pub bar: BarSign,
    pub relation2: Rel2Convention,
}

/// One summand of a vanishing family. `sign` is `None` where the sign is
/// not determined.
#[derive(Debug, Clone)]
pub struct Term {
    pub sign: Option<Sign>,
    pub op: MultiOp,
    pub label: String,
}

#[derive(Debug, Clone)]
pub enum Component {
    Equation { lhs: MultiOp, rhs: MultiOp },
    Vanishing { terms: Vec<Term> },
}

impl Component {
    fn has_unknown_signs(&self) -> bool {
        match self {
            Component::Equation { .. } => false,
            Component::Vanishing { terms } => terms.iter().any(|t| t.sign.is_none()),
        }
    }

    fn inputs(&self) -> usize {
        match self {
            Component::Equation { lhs, .. } => lhs.inputs(),
            Component::Vanishing { terms } => terms[0].op.inputs(),
        }
    }

    fn term_count(&self) -> usize {
        match self {
            Component::Equation { .. } => 1,
            Component::Vanishing { terms } => terms.len(),
        }
    }
}

/// A relation is a list of independent components, all of which must hold.
#[derive(Debug, Clone)]
pub struct Relation {
    pub id: RelationId,
    pub components: Vec<Component>,
}

impl Relation {
    pub fn has_unknown_signs(&self) -> bool {
        self.components.iter().any(Component::has_unknown_signs)
    }
}

fn tensor(factors: Vec<MultiOp>) -> MultiOp {
    MultiOp::tensor(factors).expect("nonempty tensor")
}

fn compose(stages: Vec<MultiOp>) -> Result<MultiOp> {
    MultiOp::compose(stages)
}

fn sum(terms: Vec<MultiOp>) -> MultiOp {
    MultiOp::sum(terms).expect("summands share shape")
}

/// `op` at slot `at` of `len`, `other` everywhere else.
fn placed(op: &MultiOp, at: usize, other: &MultiOp, len: usize) -> Vec<MultiOp> {
    (0..len).map(|i| if i == at { op.clone() } else { other.clone() }).collect()
}

/// A signed tensor alternative with a printable label.
struct Alt {
    sign: Option<Sign>,
    factors: Vec<MultiOp>,
}

impl Alt {
    fn label(&self) -> String {
        self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("⊗")
    }
}

/// All terms `outer ∘ σ_{q,p} ∘ inner` of a product of two sums.
fn fraction_terms(outer: &[Alt], q: usize, p: usize, inner: &[Alt]) -> Result<Vec<Term>> {
    let mut terms = Vec::with_capacity(outer.len() * inner.len());
    for o in outer {
        for i in inner {
            let sign = match (o.sign, i.sign) {
                (Some(a), Some(b)) => Some(a.times(b)),
                _ => None,
            };
            let op = compose(vec![tensor(o.factors.clone()), MultiOp::sigma(q, p), tensor(i.factors.clone())])?;
            terms.push(Term {
                sign,
                op,
                label: format!("({})σ_{{{q},{p}}}({})", o.label(), i.label()),
            });
        }
    }
    Ok(terms)
}

/// Sign of the term whose single distinguished factor sits at 1-based slot
/// `s` of `len`: `+` when an even number of slots follows it, else `-(-1)^len`.
fn endpoint_sign(s: usize, len: usize) -> Sign {
    if (len - s).is_multiple_of(2) {
        Sign::Plus
    } else {
        calculus::minus_pow(len)
    }
}

/// Every way of choosing `k` of `len` slots, lexicographically.
fn choose(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, k, &mut Vec::new(), &mut out);
    out
}

/// Tensor alternatives with `special` in the chosen `k` slots and `other`
/// in the rest. Signs: the leading alternative is `+`; for `k = len-1` the
/// endpoint rule applies; otherwise unknown.
fn distributions(special: &MultiOp, other: &MultiOp, len: usize, k: usize) -> Vec<Alt> {
    choose(len, k)
        .into_iter()
        .enumerate()
        .map(|(idx, slots)| {
            let factors: Vec<MultiOp> = (0..len)
                .map(|i| if slots.contains(&i) { special.clone() } else { other.clone() })
                .collect();
            let sign = if k + 1 == len {
                let s = (0..len).find(|i| !slots.contains(i)).expect("one free slot") + 1;
                Some(endpoint_sign(s, len))
            } else if idx == 0 {
                Some(Sign::Plus)
            } else {
                None
            };
            Alt { sign, factors }
        })
        .collect()
}

/// Builds every applicable relation for `h`, in [`RelationId`] order.
pub fn build_relations(h: &HopfStructure, conventions: Conventions) -> Result<Vec<Relation>> {
    let omega = h
        .omega()
        .ok_or_else(|| Error::MalformedOp("the structure has no ω operation".into()))?;
    let mut out = Vec::new();
    for id in RelationId::ALL {
        if id.applies(omega.m, omega.n) {
            out.push(build_relation(h, id, conventions)?);
        }
    }
    Ok(out)
}

pub fn build_relation(h: &HopfStructure, id: RelationId, conventions: Conventions) -> Result<Relation> {
    use RelationId::*;
    let eq = |(lhs, rhs): (MultiOp, MultiOp)| Component::Equation { lhs, rhs };
    let components = match id {
        Assoc | Coassoc | Hopf => {
            let idx = match id {
                Assoc => 0,
                Coassoc => 1,
                _ => 2,
            };
            let (_, lhs, rhs) = h.axioms().swap_remove(idx);
            vec![Component::Equation { lhs, rhs }]
        }
        _ => {
            let omega = h
                .omega()
                .ok_or_else(|| Error::MalformedOp("the structure has no ω operation".into()))?;
            if !id.applies(omega.m, omega.n) {
                return Err(Error::NotApplicable(format!(
                    "{id} requires {} but the type is ({},{})",
                    match id {
                        R4a | R4b | R4c | R4d => "m = 2",
                        R5a | R5b | R5c | R5d => "n = 2",
                        _ => "m = n = 2",
                    },
                    omega.m,
                    omega.n
                )));
            }
            match id {
                R1 => vec![eq(relation1(h, omega)?)],
                R2 => vec![eq(relation2(h, omega, conventions)?)],
                R3 => vec![Component::Vanishing { terms: relation3(h, omega)? }],
                R4a => vec![Component::Vanishing { terms: relation4a(h, omega)? }],
                R5a => vec![Component::Vanishing { terms: relation5a(h, omega)? }],
                R6 => vec![Component::Vanishing { terms: relation6(omega)? }],
                R4b | R4c | R4d => relation4(h, omega, id)?
                    .into_iter()
                    .map(|terms| Component::Vanishing { terms })
                    .collect(),
                R5b | R5c | R5d => relation5(h, omega, id)?
                    .into_iter()
                    .map(|terms| Component::Vanishing { terms })
                    .collect(),
                Assoc | Coassoc | Hopf => unreachable!(),
            }
        }
    };
    Ok(Relation { id, components })
}

/// `δⁿω = (g_m⊗ω - (-1)ⁿ ω⊗g_m) σ_{2,m} Δ^{⊗m}`.
pub fn relation1(h: &HopfStructure, omega: &Omega) -> Result<(MultiOp, MultiOp)> {
    let (m, n, w) = (omega.m, omega.n, &omega.op);
    let lhs = compose(vec![h.cobar(n), w.clone()])?;
    let g = h.g(m);
    let outer = sum(vec![
        tensor(vec![g.clone(), w.clone()]),
        MultiOp::scaled(calculus::minus_pow(n), tensor(vec![w.clone(), g])),
    ]);
    let rhs = compose(vec![
        outer,
        MultiOp::sigma(2, m),
        calculus::tensor_power(h.coproduct(), m),
    ])?;
    Ok((lhs, rhs))
}

/// `ω∂_m` against the chosen rendition of the right-hand side.
pub fn relation2(h: &HopfStructure, omega: &Omega, conventions: Conventions) -> Result<(MultiOp, MultiOp)> {
    let (m, n, w) = (omega.m, omega.n, &omega.op);
    let lhs = compose(vec![w.clone(), h.bar(m, conventions.bar)])?;
    let f = h.f(n);
    let mus = calculus::tensor_power(h.product(), n);
    let branch = |factors: Vec<MultiOp>, sign: Sign| -> Result<MultiOp> {
        Ok(MultiOp::scaled(
            sign,
            compose(vec![mus.clone(), MultiOp::sigma(n, 2), tensor(factors)])?,
        ))
    };
    let rhs = match conventions.relation2 {
        Rel2Convention::Definition => sum(vec![
            branch(vec![f.clone(), w.clone()], Sign::Plus)?,
            branch(vec![w.clone(), f], calculus::minus_pow(m))?,
        ]),
        Rel2Convention::Display => {
            let global = calculus::signed_power_sign(calculus::PowerOf::Product, n);
            sum(vec![
                branch(vec![w.clone(), f.clone()], global)?,
                branch(vec![f, w.clone()], global.times(calculus::minus_pow(m)))?,
            ])
        }
    };
    Ok((lhs, rhs))
}

/// `(Σ± g^{i-1}⊗ω⊗g^{n-i}) σ_{n,m} (Σ± f^{j-1}⊗ω⊗f^{m-j})`.
pub fn relation3(h: &HopfStructure, omega: &Omega) -> Result<Vec<Term>> {
    let (m, n, w) = (omega.m, omega.n, &omega.op);
    let outer = leading_plus((0..n).map(|i| placed(w, i, &h.g(m), n)));
    let inner = leading_plus((0..m).map(|j| placed(w, j, &h.f(n), m)));
    fraction_terms(&outer, n, m, &inner)
}

fn leading_plus(factors: impl Iterator<Item = Vec<MultiOp>>) -> Vec<Alt> {
    factors
        .enumerate()
        .map(|(i, factors)| Alt {
            sign: if i == 0 { Some(Sign::Plus) } else { None },
            factors,
        })
        .collect()
}

/// `(ω⊗ω)σ_{2,2}(Δ⊗Δ)`.
fn relation4a(h: &HopfStructure, omega: &Omega) -> Result<Vec<Term>> {
    let w = &omega.op;
    let d = h.coproduct();
    fraction_terms(
        &[Alt { sign: Some(Sign::Plus), factors: vec![w.clone(), w.clone()] }],
        2,
        2,
        &[Alt { sign: Some(Sign::Plus), factors: vec![d.clone(), d.clone()] }],
    )
}

/// `(μ⊗μ)σ_{2,2}(ω⊗ω)`.
fn relation5a(h: &HopfStructure, omega: &Omega) -> Result<Vec<Term>> {
    let w = &omega.op;
    let mu = h.product();
    fraction_terms(
        &[Alt { sign: Some(Sign::Plus), factors: vec![mu.clone(), mu.clone()] }],
        2,
        2,
        &[Alt { sign: Some(Sign::Plus), factors: vec![w.clone(), w.clone()] }],
    )
}

/// `(ω⊗ω)σ_{2,2}(ω⊗ω)`.
fn relation6(omega: &Omega) -> Result<Vec<Term>> {
    let w = &omega.op;
    let alt = || Alt { sign: Some(Sign::Plus), factors: vec![w.clone(), w.clone()] };
    fraction_terms(&[alt()], 2, 2, &[alt()])
}

/// `m = 2`: `[k slots μ, n-k slots ω] σ_{n,2} (fⁿ⊗ω - ω⊗fⁿ)` with `k = 0`
/// (b), `1 ≤ k ≤ max(1, n-2)` (c and the elided members) and `k = n-1` (d).
/// One component per `k`.
fn relation4(h: &HopfStructure, omega: &Omega, id: RelationId) -> Result<Vec<Vec<Term>>> {
    let (n, w) = (omega.n, &omega.op);
    let f = h.f(n);
    let inner = [
        Alt { sign: Some(Sign::Plus), factors: vec![f.clone(), w.clone()] },
        Alt { sign: Some(Sign::Minus), factors: vec![w.clone(), f] },
    ];
    family_ks(id, n)
        .into_iter()
        .map(|k| fraction_terms(&distributions(h.product(), w, n, k), n, 2, &inner))
        .collect()
}

/// `n = 2`: `(g_m⊗ω - ω⊗g_m) σ_{2,m} [k slots Δ, m-k slots ω]`, dually.
fn relation5(h: &HopfStructure, omega: &Omega, id: RelationId) -> Result<Vec<Vec<Term>>> {
    let (m, w) = (omega.m, &omega.op);
    let g = h.g(m);
    let outer = [
        Alt { sign: Some(Sign::Plus), factors: vec![g.clone(), w.clone()] },
        Alt { sign: Some(Sign::Minus), factors: vec![w.clone(), g] },
    ];
    family_ks(id, m)
        .into_iter()
        .map(|k| fraction_terms(&outer, 2, m, &distributions(h.coproduct(), w, m, k)))
        .collect()
}

fn family_ks(id: RelationId, len: usize) -> Vec<usize> {
    match id {
        RelationId::R4b | RelationId::R5b => vec![0],
        RelationId::R4c | RelationId::R5c => (1..=(len.saturating_sub(2)).max(1)).collect(),
        _ => vec![len - 1],
    }
}

/// The degree requirement `|ω| = m+n-3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub m: usize,
    pub n: usize,
    pub required: i64,
    pub found: i64,
}

impl DegreeCheck {
    pub fn passed(&self) -> bool {
        self.required == self.found
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub input: Word,
    pub lhs: Element,
    pub rhs: Element,
    /// The offending term, in termwise mode.
    pub term: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub relation: RelationId,
    pub mode: VerificationMode,
    pub passed: bool,
    pub witness: Option<Witness>,
    /// `(#generators)^arity` of the input tensor power.
    pub basis_size: u128,
    /// Number of (term, word) evaluations actually performed; words outside
    /// every term's support map to zero and are skipped.
    pub evaluated: u128,
    pub terms: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub structure: String,
    pub degree: DegreeCheck,
    pub reports: Vec<RelationReport>,
}

impl Verification {
    pub fn relations_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn passed(&self) -> bool {
        self.degree.passed() && self.relations_passed()
    }
}

/// Verifies every applicable relation of `h`. The degree condition is
/// reported separately and does not stop the relation checks.
pub fn verify(h: &HopfStructure, mode: VerificationMode, conventions: Conventions) -> Result<Verification> {
    let omega = h
        .omega()
        .ok_or_else(|| Error::MalformedOp("the structure has no ω operation".into()))?;
    let degree = DegreeCheck {
        m: omega.m,
        n: omega.n,
        required: omega.required_degree(),
        found: omega.op.degree(),
    };
    let relations = build_relations(h, conventions)?;
    let ring = h.space().ring();
    if mode == VerificationMode::Exact && !ring.is_char_two() {
        if let Some(r) = relations.iter().find(|r| r.has_unknown_signs()) {
            return Err(Error::ModeNotApplicable {
                mode: mode.to_string(),
                relation: r.id.to_string(),
                ring,
            });
        }
    }
    let reports = relations
        .iter()
        .map(|r| {
            let mode = if r.id.uses_mode() { mode } else { VerificationMode::Exact };
            check_relation(h.space(), r, mode)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Verification {
        structure: h.name().to_string(),
        degree,
        reports,
    })
}

/// Checks one relation in the given mode.
pub fn check_relation(space: &Arc<Space>, relation: &Relation, mode: VerificationMode) -> Result<RelationReport> {
    let mut report = RelationReport {
        relation: relation.id,
        mode,
        passed: true,
        witness: None,
        basis_size: 0,
        evaluated: 0,
        terms: relation.components.iter().map(Component::term_count).sum(),
    };
    for component in &relation.components {
        let radix = space.generators().len() as u128;
        report.basis_size = report
            .basis_size
            .max(radix.saturating_pow(component.inputs() as u32));
        let (evaluated, witness) = check_component(space, component, mode)?;
        report.evaluated = report.evaluated.saturating_add(evaluated);
        if witness.is_some() {
            report.passed = false;
            report.witness = witness;
            break;
        }
    }
    Ok(report)
}

fn check_component(
    space: &Arc<Space>,
    component: &Component,
    mode: VerificationMode,
) -> Result<(u128, Option<Witness>)> {
    match component {
        Component::Equation { lhs, rhs } => {
            let words = candidates(space, &[lhs, rhs]);
            let found = first_mismatch(&words, |w| {
                let l = lhs.apply_word(space, w)?;
                let r = rhs.apply_word(space, w)?;
                Ok((l != r).then_some((l, r)))
            })?;
            Ok((words.len() as u128, found.map(|(input, lhs, rhs)| Witness { input, lhs, rhs, term: None })))
        }
        Component::Vanishing { terms } => match mode {
            VerificationMode::Exact => {
                let total = sum(
                    terms
                        .iter()
                        .map(|t| MultiOp::scaled(t.sign.unwrap_or(Sign::Plus), t.op.clone()))
                        .collect(),
                );
                let ops: Vec<&MultiOp> = terms.iter().map(|t| &t.op).collect();
                let words = candidates(space, &ops);
                let found = first_mismatch(&words, |w| {
                    let value = total.apply_word(space, w)?;
                    Ok((!value.is_zero()).then(|| (value, Element::zero(space, total.outputs()))))
                })?;
                Ok((words.len() as u128, found.map(|(input, lhs, rhs)| Witness { input, lhs, rhs, term: None })))
            }
            VerificationMode::TermwiseZero => {
                let mut evaluated = 0u128;
                for t in terms {
                    let words = candidates(space, &[&t.op]);
                    evaluated += words.len() as u128;
                    let found = first_mismatch(&words, |w| {
                        let value = t.op.apply_word(space, w)?;
                        Ok((!value.is_zero()).then(|| (value, Element::zero(space, t.op.outputs()))))
                    })?;
                    if let Some((input, lhs, rhs)) = found {
                        let term = Some(t.label.clone());
                        return Ok((evaluated, Some(Witness { input, lhs, rhs, term })));
                    }
                }
                Ok((evaluated, None))
            }
        },
    }
}

/// The union of the supports, in canonical order.
fn candidates(space: &Arc<Space>, ops: &[&MultiOp]) -> Vec<Word> {
    let mut words = BTreeSet::new();
    for op in ops {
        words.extend(op.support().words(space));
    }
    words.into_iter().collect()
}

/// First word (in the given order) on which `check` reports a mismatch.
/// Runs in parallel; the result does not depend on scheduling.
fn first_mismatch<F>(words: &[Word], check: F) -> Result<Option<(Word, Element, Element)>>
where
    F: Fn(&Word) -> Result<Option<(Element, Element)>> + Sync,
{
    let hit = words.par_iter().find_map_first(|w| match check(w) {
        Ok(None) => None,
        Ok(Some((l, r))) => Some(Ok((w.clone(), l, r))),
        Err(e) => Some(Err(e)),
    });
    hit.transpose()
}
