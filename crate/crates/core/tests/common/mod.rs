#![allow(dead_code)]

use std::sync::Arc;

use bialgebra::hopf::{primitive_coproduct, trivial_product};
use bialgebra::{Element, GeneratorTable, HopfStructure, MultiOp, Ring, Scalar, Space, Word};
use num_rational::Rational64;

/// Compares two operations on every basis word, without the support
/// restriction or fraction pruning.
pub fn full_equal(space: &Arc<Space>, a: &MultiOp, b: &MultiOp) -> bool {
    assert_eq!((a.inputs(), a.outputs()), (b.inputs(), b.outputs()));
    space
        .basis(a.inputs())
        .all(|w| a.apply_word_unpruned(space, &w).unwrap() == b.apply_word_unpruned(space, &w).unwrap())
}

pub fn full_zero(space: &Arc<Space>, a: &MultiOp) -> bool {
    space.basis(a.inputs()).all(|w| a.apply_word_unpruned(space, &w).unwrap().is_zero())
}

pub fn word(space: &Arc<Space>, text: &str) -> Word {
    space.parse_word(text).unwrap()
}

pub fn elt(space: &Arc<Space>, text: &str) -> Element {
    Element::parse(space, text).unwrap()
}

/// `y` odd and `z` even, over `Q`.
pub fn mixed_space() -> Arc<Space> {
    Space::new(Ring::Rationals, GeneratorTable::new(&[("y", 1), ("z", 2)]).unwrap())
}

/// A table of the given shape whose entries are drawn from `coeffs`
/// (cycled), on every input/output pair of matching degree.
pub fn dense_table(space: &Arc<Space>, inputs: usize, outputs: usize, degree: i64, coeffs: &[i64]) -> MultiOp {
    let mut k = 0usize;
    let mut next = || {
        let c = if coeffs.is_empty() { 0 } else { coeffs[k % coeffs.len()] };
        k += 1;
        c
    };
    let targets: Vec<Word> = space.basis(outputs).collect();
    let mut entries = Vec::new();
    for w in space.basis(inputs) {
        let want = space.word_degree(w.letters()) + degree;
        let terms: Vec<(Word, Scalar)> = targets
            .iter()
            .filter(|t| space.word_degree(t.letters()) == want)
            .map(|t| (t.clone(), Scalar::from_int(space.ring(), next())))
            .collect();
        let image = Element::from_terms(space, outputs, terms).unwrap();
        if !image.is_zero() {
            entries.push((w, image));
        }
    }
    MultiOp::table(space, inputs, outputs, degree, entries).unwrap()
}

/// Trivial product and primitive coproduct on `space` with a dense ω,
/// without the Hopf check (an even generator over `Q` is not Hopf).
pub fn dense_structure(space: &Arc<Space>, m: usize, n: usize, coeffs: &[i64]) -> HopfStructure {
    let omega = dense_table(space, m, n, (m + n) as i64 - 3, coeffs);
    HopfStructure::new_unchecked("dense", space, trivial_product(space).unwrap(), primitive_coproduct(space).unwrap())
        .unwrap()
        .with_omega(omega)
        .unwrap()
}

pub fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}
