//! Per-word evaluation of operation trees.
//!
//! Sign rules: `(f⊗g)(a⊗b) = (-1)^{|g||a|} f(a)⊗g(b)`, coefficients are moved
//! to the front past the letters already written, and `σ_{q,p}` carries the
//! Koszul sign of the letter permutation.
//!
//! A composite `(α₁⊗⋯⊗α_q) ∘ σ_{q,p} ∘ (β₁⊗⋯⊗β_p)` is evaluated with prefix
//! pruning: while the product of the `β` images is being expanded, a partial
//! term is dropped as soon as some column already reads a prefix on which the
//! corresponding `α` vanishes for every completion.

use std::collections::HashMap;
use std::sync::Arc;

use crate::op::{MultiOp, OpKind, Sign};
use crate::ring::Scalar;
use crate::space::{Letter, Space};

pub(crate) type Lin = HashMap<Vec<Letter>, Scalar>;

/// Largest `|basis|^p` for which a live-prefix table is built.
const LIVE_TABLE_LIMIT: u128 = 1 << 14;

struct Ctx<'a> {
    space: &'a Arc<Space>,
    one: Scalar,
    prune: bool,
}

pub(crate) fn eval_word(
    op: &MultiOp,
    space: &Arc<Space>,
    word: &[Letter],
    prune: bool,
) -> Vec<(Vec<Letter>, Scalar)> {
    let ctx = Ctx {
        space,
        one: Scalar::one(space.ring()),
        prune,
    };
    eval(op, &ctx, word).into_iter().collect()
}

fn add_term(acc: &mut Lin, word: Vec<Letter>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(word) {
        std::collections::hash_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut slot) => {
            let sum = slot.get().add_same(&c);
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

fn eval(op: &MultiOp, ctx: &Ctx<'_>, word: &[Letter]) -> Lin {
    debug_assert_eq!(word.len(), op.inputs());
    match op.kind() {
        OpKind::Identity => Lin::from([(word.to_vec(), ctx.one)]),
        OpKind::Zero => Lin::new(),
        OpKind::Table(table) => {
            let mut out = Lin::new();
            if let Some(image) = table.get(&crate::space::Word(word.to_vec())) {
                for (w, c) in image.terms() {
                    out.insert(w.letters().to_vec(), *c);
                }
            }
            out
        }
        OpKind::Scaled(sign, inner) => {
            let mut out = eval(inner, ctx, word);
            if *sign == Sign::Minus {
                for c in out.values_mut() {
                    *c = c.neg();
                }
            }
            out
        }
        OpKind::Sum(terms) => {
            let mut out = Lin::new();
            for t in terms {
                for (w, c) in eval(t, ctx, word) {
                    add_term(&mut out, w, c);
                }
            }
            out
        }
        OpKind::Sigma { q, p } => {
            let (letters, sign) = block_transpose(ctx.space, word, *q, *p);
            Lin::from([(letters, sign.apply(&ctx.one))])
        }
        OpKind::Tensor(factors) => eval_tensor(factors, ctx, word, None),
        OpKind::Compose(stages) => eval_compose(op, stages, ctx, word),
    }
}

/// `(H^{⊗q})^{⊗p} → (H^{⊗p})^{⊗q}`: letter `j` of input block `i` lands at
/// position `i` of output block `j`.
pub(crate) fn block_transpose(space: &Space, word: &[Letter], q: usize, p: usize) -> (Vec<Letter>, Sign) {
    let mut out = vec![0; word.len()];
    let mut odd_targets = Vec::new();
    for i in 0..p {
        for j in 0..q {
            let letter = word[i * q + j];
            let target = j * p + i;
            out[target] = letter;
            if space.degree(letter) % 2 != 0 {
                odd_targets.push(target);
            }
        }
    }
    let mut inversions = 0i64;
    for a in 0..odd_targets.len() {
        for b in a + 1..odd_targets.len() {
            if odd_targets[a] > odd_targets[b] {
                inversions += 1;
            }
        }
    }
    (out, Sign::pow(inversions))
}

fn eval_tensor(factors: &[MultiOp], ctx: &Ctx<'_>, word: &[Letter], pruner: Option<&Pruner>) -> Lin {
    let mut partial: Vec<(Vec<Letter>, Scalar, i64)> = vec![(Vec::new(), ctx.one, 0)];
    let mut offset = 0;
    let mut passed = 0i64;
    for (i, f) in factors.iter().enumerate() {
        let segment = &word[offset..offset + f.inputs()];
        let sign = Sign::pow(f.degree() * passed);
        let image = eval(f, ctx, segment);
        if image.is_empty() {
            return Lin::new();
        }
        let image: Vec<(Vec<Letter>, Scalar, i64)> = image
            .into_iter()
            .map(|(v, b)| {
                let d = ctx.space.word_degree(&v);
                (v, sign.apply(&b), d)
            })
            .collect();
        let mut next = Vec::with_capacity(partial.len() * image.len());
        for (u, a, du) in &partial {
            for (v, b, dv) in &image {
                let c = a.mul_same(&b.pass_over(*du));
                if c.is_zero() {
                    continue;
                }
                let mut letters = Vec::with_capacity(u.len() + v.len());
                letters.extend_from_slice(u);
                letters.extend_from_slice(v);
                if let Some(pr) = pruner {
                    if !pr.alive(&letters, i + 1) {
                        continue;
                    }
                }
                next.push((letters, c, du + dv));
            }
        }
        if next.is_empty() {
            return Lin::new();
        }
        partial = next;
        offset += f.inputs();
        passed += ctx.space.word_degree(segment);
    }
    let mut out = Lin::new();
    for (w, c, _) in partial {
        add_term(&mut out, w, c);
    }
    out
}

fn eval_compose(op: &MultiOp, stages: &[MultiOp], ctx: &Ctx<'_>, word: &[Letter]) -> Lin {
    let owned;
    let pruners: &[Option<Arc<Pruner>>] = if ctx.prune {
        match op.0.pruners.get() {
            Some((space, p)) if space.same_as(ctx.space) => p,
            Some(_) => {
                owned = build_pruners(stages, ctx);
                &owned
            }
            None => {
                let built = build_pruners(stages, ctx);
                let (_, cached) = op.0.pruners.get_or_init(|| (Arc::clone(ctx.space), built));
                cached
            }
        }
    } else {
        &[]
    };

    let mut current = Lin::from([(word.to_vec(), ctx.one)]);
    for (k, stage) in stages.iter().rev().enumerate() {
        let pruner = pruners.get(k).and_then(|p| p.as_deref());
        let mut next = Lin::new();
        for (v, c) in current {
            let c = c.pass_over(stage.degree());
            let image = match (stage.kind(), pruner) {
                (OpKind::Tensor(factors), Some(pr)) => eval_tensor(factors, ctx, &v, Some(pr)),
                _ => eval(stage, ctx, &v),
            };
            for (u, b) in image {
                add_term(&mut next, u, c.mul_same(&b));
            }
        }
        if next.is_empty() {
            return next;
        }
        current = next;
    }
    current
}

/// For every stage (application order), the pruner to use when that stage
/// is the denominator of a fraction.
fn build_pruners(stages: &[MultiOp], ctx: &Ctx<'_>) -> Vec<Option<Arc<Pruner>>> {
    let order: Vec<&MultiOp> = stages.iter().rev().collect();
    let mut cache: Vec<(MultiOp, Arc<LiveSet>)> = Vec::new();
    (0..order.len())
        .map(|k| {
            let (Some(inner), Some(sigma), Some(outer)) = (order.get(k), order.get(k + 1), order.get(k + 2)) else {
                return None;
            };
            let OpKind::Tensor(betas) = inner.kind() else {
                return None;
            };
            let OpKind::Sigma { q, p } = *sigma.kind() else {
                return None;
            };
            if betas.len() != p || betas.iter().any(|b| b.outputs() != q) {
                return None;
            }
            let alternatives = numerators(outer, q, p)?;
            let mut columns = Vec::with_capacity(alternatives.len());
            for alpha in alternatives {
                let mut sets = Vec::with_capacity(q);
                for a in alpha {
                    sets.push(live_set(&a, ctx, &mut cache)?);
                }
                columns.push(sets);
            }
            Some(Arc::new(Pruner { q, p, columns }))
        })
        .collect()
}

/// Splits a numerator into its tensor alternatives, each a list of `q`
/// factors with `p` inputs.
fn numerators(op: &MultiOp, q: usize, p: usize) -> Option<Vec<Vec<MultiOp>>> {
    match op.kind() {
        OpKind::Tensor(alphas) if alphas.len() == q && alphas.iter().all(|a| a.inputs() == p) => {
            Some(vec![alphas.clone()])
        }
        OpKind::Scaled(_, inner) => numerators(inner, q, p),
        OpKind::Sum(terms) => {
            let mut all = Vec::new();
            for t in terms {
                all.extend(numerators(t, q, p)?);
            }
            Some(all)
        }
        _ if q == 1 && op.inputs() == p => Some(vec![vec![op.clone()]]),
        _ => None,
    }
}

fn live_set(op: &MultiOp, ctx: &Ctx<'_>, cache: &mut Vec<(MultiOp, Arc<LiveSet>)>) -> Option<Arc<LiveSet>> {
    if let Some((_, set)) = cache.iter().find(|(o, _)| o.ptr_eq(op)) {
        return Some(Arc::clone(set));
    }
    let radix = ctx.space.generators().len();
    let p = op.inputs();
    if ctx.space.basis_size(p) > LIVE_TABLE_LIMIT {
        return None;
    }
    let mut set = LiveSet::new(radix, p);
    for w in ctx.space.basis(p) {
        if !eval(op, ctx, w.letters()).is_empty() {
            set.insert(w.letters());
        }
    }
    let set = Arc::new(set);
    cache.push((op.clone(), Arc::clone(&set)));
    Some(set)
}

/// Prefixes of the input words on which an operation is nonzero.
#[derive(Debug)]
pub(crate) struct LiveSet {
    radix: usize,
    by_len: Vec<Vec<bool>>,
}

impl LiveSet {
    fn new(radix: usize, max_len: usize) -> LiveSet {
        let by_len = (0..=max_len).map(|l| vec![false; radix.pow(l as u32)]).collect();
        LiveSet { radix, by_len }
    }

    fn insert(&mut self, word: &[Letter]) {
        let mut key = 0;
        self.by_len[0][0] = true;
        for (l, &letter) in word.iter().enumerate() {
            key = key * self.radix + letter as usize;
            self.by_len[l + 1][key] = true;
        }
    }

    fn contains(&self, key: usize, len: usize) -> bool {
        self.by_len[len][key]
    }
}

#[derive(Debug)]
pub(crate) struct Pruner {
    q: usize,
    p: usize,
    /// One entry per numerator alternative, one live set per column.
    columns: Vec<Vec<Arc<LiveSet>>>,
}

impl Pruner {
    /// `letters` holds the first `blocks` output blocks (each of `q` letters)
    /// of the denominator.
    fn alive(&self, letters: &[Letter], blocks: usize) -> bool {
        debug_assert!(blocks <= self.p);
        debug_assert_eq!(letters.len(), blocks * self.q);
        self.columns.iter().any(|alternative| {
            alternative.iter().enumerate().all(|(j, set)| {
                let mut key = 0;
                for b in 0..blocks {
                    key = key * set.radix + letters[b * self.q + j] as usize;
                }
                set.contains(key, blocks)
            })
        })
    }
}
