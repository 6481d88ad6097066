//! Multilinear operations `H^{⊗m} → H^{⊗n}` as immutable expression trees.
//!
//! Operations are never materialised as matrices: [`MultiOp::apply`] walks
//! the tree once per basis word of the input.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::element::{Degree, Element};
use crate::error::{Error, Result};
use crate::eval::{self, Pruner};
use crate::ring::Scalar;
use crate::space::{Space, Word};

/// A global `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^exponent`.
    pub fn pow(exponent: i64) -> Sign {
        if exponent.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn negate(self) -> Sign {
        self.times(Sign::Minus)
    }

    pub fn apply(self, s: &Scalar) -> Scalar {
        match self {
            Sign::Plus => *s,
            Sign::Minus => s.neg(),
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A basis-image table; words missing from the table map to zero.
#[derive(Debug)]
pub struct Table {
    space: Arc<Space>,
    entries: HashMap<Word, Element>,
}

impl Table {
    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn get(&self, word: &Word) -> Option<&Element> {
        self.entries.get(word)
    }

    /// Nonzero entries in canonical word order.
    pub fn entries(&self) -> Vec<(&Word, &Element)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
}

#[derive(Debug)]
pub enum OpKind {
    Table(Table),
    Identity,
    Zero,
    /// `f₁ ⊗ f₂ ⊗ ⋯`, left to right.
    Tensor(Vec<MultiOp>),
    /// `f₁ ∘ f₂ ∘ ⋯` in written order: the last stage is applied first.
    Compose(Vec<MultiOp>),
    /// Block transpose `(H^{⊗q})^{⊗p} → (H^{⊗p})^{⊗q}`.
    Sigma { q: usize, p: usize },
    Scaled(Sign, MultiOp),
    Sum(Vec<MultiOp>),
}

#[derive(Debug)]
pub(crate) struct Node {
    inputs: usize,
    outputs: usize,
    degree: i64,
    kind: OpKind,
    label: Option<String>,
    pub(crate) pruners: OnceLock<PrunerCache>,
}

/// Pruners of a composite's windows, built for one space.
pub(crate) type PrunerCache = (Arc<Space>, Vec<Option<Arc<Pruner>>>);

/// A degree-`d` multilinear operation `H^{⊗m} → H^{⊗n}`. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct MultiOp(pub(crate) Arc<Node>);

impl MultiOp {
    fn build(inputs: usize, outputs: usize, degree: i64, kind: OpKind) -> MultiOp {
        MultiOp(Arc::new(Node {
            inputs,
            outputs,
            degree,
            kind,
            label: None,
            pruners: OnceLock::new(),
        }))
    }

    /// Table-driven operation. Every nonzero image must have degree
    /// `|word| + degree` and arity `outputs`.
    pub fn table(
        space: &Arc<Space>,
        inputs: usize,
        outputs: usize,
        degree: i64,
        entries: impl IntoIterator<Item = (Word, Element)>,
    ) -> Result<MultiOp> {
        if inputs == 0 || outputs == 0 {
            return Err(Error::MalformedOp("operations need at least one input and output".into()));
        }
        let mut map: HashMap<Word, Element> = HashMap::new();
        for (word, image) in entries {
            if word.len() != inputs {
                return Err(Error::ArityMismatch {
                    expected: inputs,
                    found: word.len(),
                });
            }
            if image.arity() != outputs {
                return Err(Error::ArityMismatch {
                    expected: outputs,
                    found: image.arity(),
                });
            }
            if !image.space().same_as(space) {
                return Err(Error::SpaceMismatch);
            }
            let image = match map.remove(&word) {
                Some(prev) => prev.add(&image)?,
                None => image,
            };
            if image.is_zero() {
                continue;
            }
            let expected = space.word_degree(word.letters()) + degree;
            match image.degree()? {
                Degree::Homogeneous(d) if d == expected => {}
                Degree::Homogeneous(found) => {
                    return Err(Error::DegreeShift {
                        word: space.format_word(&word),
                        shift: degree,
                        expected,
                        found,
                    })
                }
                Degree::Mixed => {
                    return Err(Error::MalformedOp(format!(
                        "image of {} is not homogeneous",
                        space.format_word(&word)
                    )))
                }
            }
            map.insert(word, image);
        }
        Ok(MultiOp::build(
            inputs,
            outputs,
            degree,
            OpKind::Table(Table {
                space: Arc::clone(space),
                entries: map,
            }),
        ))
    }

    pub fn identity(k: usize) -> MultiOp {
        assert!(k >= 1, "identity needs at least one factor");
        MultiOp::build(k, k, 0, OpKind::Identity)
    }

    pub fn zero(inputs: usize, outputs: usize, degree: i64) -> MultiOp {
        MultiOp::build(inputs, outputs, degree, OpKind::Zero)
    }

    /// `σ_{q,p}`; `σ_{1,k}` and `σ_{k,1}` are identities.
    pub fn sigma(q: usize, p: usize) -> MultiOp {
        assert!(q >= 1 && p >= 1, "sigma needs positive block sizes");
        if q == 1 || p == 1 {
            return MultiOp::identity(q * p);
        }
        MultiOp::build(q * p, q * p, 0, OpKind::Sigma { q, p })
    }

    pub fn tensor(factors: Vec<MultiOp>) -> Result<MultiOp> {
        match factors.len() {
            0 => Err(Error::MalformedOp("empty tensor product".into())),
            1 => Ok(factors.into_iter().next().unwrap()),
            _ => {
                let inputs = factors.iter().map(|f| f.inputs()).sum();
                let outputs = factors.iter().map(|f| f.outputs()).sum();
                let degree = factors.iter().map(|f| f.degree()).sum();
                Ok(MultiOp::build(inputs, outputs, degree, OpKind::Tensor(factors)))
            }
        }
    }

    /// `stages[0] ∘ stages[1] ∘ ⋯`, the last stage applied first.
    pub fn compose(stages: Vec<MultiOp>) -> Result<MultiOp> {
        if stages.is_empty() {
            return Err(Error::MalformedOp("empty composition".into()));
        }
        for pair in stages.windows(2) {
            if pair[1].outputs() != pair[0].inputs() {
                return Err(Error::ArityMismatch {
                    expected: pair[0].inputs(),
                    found: pair[1].outputs(),
                });
            }
        }
        if stages.len() == 1 {
            return Ok(stages.into_iter().next().unwrap());
        }
        let inputs = stages.last().unwrap().inputs();
        let outputs = stages[0].outputs();
        let degree = stages.iter().map(|s| s.degree()).sum();
        Ok(MultiOp::build(inputs, outputs, degree, OpKind::Compose(stages)))
    }

    pub fn sum(terms: Vec<MultiOp>) -> Result<MultiOp> {
        let Some(first) = terms.first() else {
            return Err(Error::MalformedOp("empty sum".into()));
        };
        let (inputs, outputs, degree) = (first.inputs(), first.outputs(), first.degree());
        for t in &terms {
            if t.inputs() != inputs {
                return Err(Error::ArityMismatch {
                    expected: inputs,
                    found: t.inputs(),
                });
            }
            if t.outputs() != outputs {
                return Err(Error::ArityMismatch {
                    expected: outputs,
                    found: t.outputs(),
                });
            }
            if t.degree() != degree {
                return Err(Error::MalformedOp(format!(
                    "summands of degree {degree} and {} cannot be added",
                    t.degree()
                )));
            }
        }
        if terms.len() == 1 {
            return Ok(terms.into_iter().next().unwrap());
        }
        Ok(MultiOp::build(inputs, outputs, degree, OpKind::Sum(terms)))
    }

    pub fn scaled(sign: Sign, op: MultiOp) -> MultiOp {
        if sign == Sign::Plus {
            return op;
        }
        MultiOp::build(op.inputs(), op.outputs(), op.degree(), OpKind::Scaled(sign, op))
    }

    pub fn neg(&self) -> MultiOp {
        MultiOp::scaled(Sign::Minus, self.clone())
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &MultiOp) -> Result<MultiOp> {
        MultiOp::compose(vec![self.clone(), inner.clone()])
    }

    pub fn with_label(self, label: impl Into<String>) -> MultiOp {
        let node = &self.0;
        let kind = match &node.kind {
            OpKind::Table(t) => OpKind::Table(Table {
                space: Arc::clone(&t.space),
                entries: t.entries.clone(),
            }),
            OpKind::Identity => OpKind::Identity,
            OpKind::Zero => OpKind::Zero,
            OpKind::Tensor(v) => OpKind::Tensor(v.clone()),
            OpKind::Compose(v) => OpKind::Compose(v.clone()),
            OpKind::Sigma { q, p } => OpKind::Sigma { q: *q, p: *p },
            OpKind::Scaled(s, op) => OpKind::Scaled(*s, op.clone()),
            OpKind::Sum(v) => OpKind::Sum(v.clone()),
        };
        MultiOp(Arc::new(Node {
            inputs: node.inputs,
            outputs: node.outputs,
            degree: node.degree,
            kind,
            label: Some(label.into()),
            pruners: OnceLock::new(),
        }))
    }

    pub fn inputs(&self) -> usize {
        self.0.inputs
    }

    pub fn outputs(&self) -> usize {
        self.0.outputs
    }

    pub fn degree(&self) -> i64 {
        self.0.degree
    }

    pub fn kind(&self) -> &OpKind {
        &self.0.kind
    }

    pub fn label(&self) -> Option<&str> {
        self.0.label.as_deref()
    }

    pub fn ptr_eq(&self, other: &MultiOp) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Multilinear evaluation with Koszul signs.
    pub fn apply(&self, u: &Element) -> Result<Element> {
        if u.arity() != self.inputs() {
            return Err(Error::ArityMismatch {
                expected: self.inputs(),
                found: u.arity(),
            });
        }
        self.check_space(u.space())?;
        let space = u.space();
        let mut out = Element::zero(space, self.outputs());
        for (w, c) in u.terms() {
            let c = c.pass_over(self.degree());
            for (v, b) in eval::eval_word(self, space, w.letters(), true) {
                out.accumulate(Word(v), c.mul_same(&b));
            }
        }
        Ok(out)
    }

    /// Evaluates on a single basis word.
    pub fn apply_word(&self, space: &Arc<Space>, word: &Word) -> Result<Element> {
        self.apply(&Element::basis(space, word.clone()))
    }

    /// Same as [`MultiOp::apply_word`] with the fraction pruning disabled.
    /// Exposed so the two evaluation routes can be compared.
    pub fn apply_word_unpruned(&self, space: &Arc<Space>, word: &Word) -> Result<Element> {
        if word.len() != self.inputs() {
            return Err(Error::ArityMismatch {
                expected: self.inputs(),
                found: word.len(),
            });
        }
        self.check_space(space)?;
        Element::from_terms(
            space,
            self.outputs(),
            eval::eval_word(self, space, word.letters(), false)
                .into_iter()
                .map(|(v, c)| (Word(v), c)),
        )
    }

    /// Fails if a table inside this operation was built over another space.
    pub fn check_space(&self, space: &Arc<Space>) -> Result<()> {
        let mut err = None;
        self.visit(&mut |op| {
            if let OpKind::Table(t) = op.kind() {
                if !t.space.same_as(space) && err.is_none() {
                    err = Some(if t.space.ring() != space.ring() {
                        Error::RingMismatch {
                            left: t.space.ring(),
                            right: space.ring(),
                        }
                    } else {
                        Error::SpaceMismatch
                    });
                }
            }
        });
        err.map_or(Ok(()), Err)
    }

    fn visit(&self, f: &mut impl FnMut(&MultiOp)) {
        f(self);
        match self.kind() {
            OpKind::Tensor(v) | OpKind::Compose(v) | OpKind::Sum(v) => {
                for op in v {
                    op.visit(f);
                }
            }
            OpKind::Scaled(_, op) => op.visit(f),
            _ => {}
        }
    }

    /// Over-approximation of the input words on which this operation can be
    /// nonzero. Every word outside the support maps to zero.
    pub fn support(&self) -> Support {
        match self.kind() {
            OpKind::Table(t) => Support::Words(self.inputs(), t.entries.keys().cloned().collect()),
            OpKind::Zero => Support::Words(self.inputs(), BTreeSet::new()),
            OpKind::Identity | OpKind::Sigma { .. } => Support::All(self.inputs()),
            OpKind::Tensor(v) => Support::Product(v.iter().map(MultiOp::support).collect()),
            OpKind::Compose(v) => v.last().expect("compositions are nonempty").support(),
            OpKind::Scaled(_, op) => op.support(),
            OpKind::Sum(v) => Support::Union(self.inputs(), v.iter().map(MultiOp::support).collect()),
        }
    }
}

/// A set of input words described structurally.
#[derive(Debug, Clone)]
pub enum Support {
    All(usize),
    Words(usize, BTreeSet<Word>),
    Product(Vec<Support>),
    Union(usize, Vec<Support>),
}

impl Support {
    pub fn arity(&self) -> usize {
        match self {
            Support::All(k) | Support::Words(k, _) | Support::Union(k, _) => *k,
            Support::Product(v) => v.iter().map(Support::arity).sum(),
        }
    }

    /// Upper bound on the number of words, saturating.
    pub fn size_bound(&self, radix: usize) -> u128 {
        match self {
            Support::All(k) => (radix as u128).saturating_pow(*k as u32),
            Support::Words(_, w) => w.len() as u128,
            Support::Product(v) => v
                .iter()
                .fold(1u128, |acc, s| acc.saturating_mul(s.size_bound(radix))),
            Support::Union(_, v) => v
                .iter()
                .fold(0u128, |acc, s| acc.saturating_add(s.size_bound(radix))),
        }
    }

    /// Materialises the support as a sorted set of words.
    pub fn words(&self, space: &Space) -> BTreeSet<Word> {
        match self {
            Support::All(k) => space.basis(*k).collect(),
            Support::Words(_, w) => w.clone(),
            Support::Product(v) => {
                let mut acc: Vec<Vec<u8>> = vec![Vec::new()];
                for factor in v {
                    let words = factor.words(space);
                    if words.is_empty() {
                        return BTreeSet::new();
                    }
                    let mut next = Vec::with_capacity(acc.len() * words.len());
                    for prefix in &acc {
                        for w in &words {
                            let mut letters = prefix.clone();
                            letters.extend_from_slice(w.letters());
                            next.push(letters);
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(Word).collect()
            }
            Support::Union(_, v) => v.iter().flat_map(|s| s.words(space)).collect(),
        }
    }
}

/// True iff `a` and `b` agree on every basis word of their input.
pub fn op_equal(space: &Arc<Space>, a: &MultiOp, b: &MultiOp) -> Result<bool> {
    Ok(first_difference(space, a, b)?.is_none())
}

/// The first basis word (in canonical order) on which `a` and `b` differ,
/// with both images.
pub fn first_difference(
    space: &Arc<Space>,
    a: &MultiOp,
    b: &MultiOp,
) -> Result<Option<(Word, Element, Element)>> {
    if a.inputs() != b.inputs() {
        return Err(Error::ArityMismatch {
            expected: a.inputs(),
            found: b.inputs(),
        });
    }
    if a.outputs() != b.outputs() {
        return Err(Error::ArityMismatch {
            expected: a.outputs(),
            found: b.outputs(),
        });
    }
    let candidates = Support::Union(a.inputs(), vec![a.support(), b.support()]).words(space);
    for w in candidates {
        let lhs = a.apply_word(space, &w)?;
        let rhs = b.apply_word(space, &w)?;
        if lhs != rhs {
            return Ok(Some((w, lhs, rhs)));
        }
    }
    Ok(None)
}

impl fmt::Display for MultiOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = self.label() {
            return f.write_str(label);
        }
        let join = |f: &mut fmt::Formatter<'_>, v: &[MultiOp], sep: &str| -> fmt::Result {
            f.write_str("(")?;
            for (i, op) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{op}")?;
            }
            f.write_str(")")
        };
        match self.kind() {
            OpKind::Table(_) => write!(f, "table[{}→{}]", self.inputs(), self.outputs()),
            OpKind::Identity if self.inputs() == 1 => f.write_str("1"),
            OpKind::Identity => write!(f, "1^{}", self.inputs()),
            OpKind::Zero => f.write_str("0"),
            OpKind::Tensor(v) => join(f, v, "⊗"),
            OpKind::Compose(v) => join(f, v, "∘"),
            OpKind::Sigma { q, p } => write!(f, "σ_{{{q},{p}}}"),
            OpKind::Scaled(s, op) => write!(f, "{s}{op}"),
            OpKind::Sum(v) => join(f, v, " + "),
        }
    }
}
