mod common;

use bialgebra::calculus::{self, BarSign, PowerOf};
use bialgebra::catalog::{make_ex1, make_theorem1, TypeParams};
use bialgebra::relations::{self, build_relations, Component, Conventions, RelationId, VerificationMode};
use bialgebra::{op_equal, BaseRing, Element, GeneratorTable, MultiOp, Ring, Scalar, Sign, Space, Word};
use common::*;

fn compose(v: Vec<MultiOp>) -> MultiOp {
    MultiOp::compose(v).unwrap()
}

fn tensor(v: Vec<MultiOp>) -> MultiOp {
    MultiOp::tensor(v).unwrap()
}

fn sum(v: Vec<MultiOp>) -> MultiOp {
    MultiOp::sum(v).unwrap()
}

fn id(k: usize) -> MultiOp {
    MultiOp::identity(k)
}

#[test]
fn sigma_on_ex1_coproducts() {
    let h = make_ex1();
    let s = h.space();
    let dd = tensor(vec![h.coproduct().clone(), h.coproduct().clone()]);
    let out = MultiOp::sigma(2, 2).apply(&dd.apply_word(s, &word(s, "y|y")).unwrap()).unwrap();
    assert_eq!(out, elt(s, "y|y|1|1 + y|1|1|y + 1|y|y|1 + 1|1|y|y"));
}

#[test]
fn sigma_positions_match_the_index_grid() {
    let names = ["a", "b", "c", "d", "e", "f"];
    let gens: Vec<(&str, i64)> = names.iter().map(|n| (*n, 0)).collect();
    let s = Space::new(Ring::Rationals, GeneratorTable::new(&gens).unwrap());
    for (q, p) in [(3, 2), (2, 3), (2, 2), (1, 5), (5, 1)] {
        let input: Vec<&str> = names[..q * p].to_vec();
        // transpose of the p×q grid: output block j, slot i ← input block i, slot j
        let mut expected = vec![""; q * p];
        for i in 0..p {
            for j in 0..q {
                expected[j * p + i] = input[i * q + j];
            }
        }
        let got = MultiOp::sigma(q, p).apply_word(&s, &word(&s, &input.join("|"))).unwrap();
        assert_eq!(got, elt(&s, &expected.join("|")), "σ_{{{q},{p}}}");
    }
    let got = MultiOp::sigma(3, 2).apply_word(&s, &word(&s, "a|b|c|d|e|f")).unwrap();
    assert_eq!(got.to_string(), "a|d|b|e|c|f");
}

#[test]
fn sigma_carries_koszul_signs() {
    let s = mixed_space();
    // the two odd letters in the middle cross each other
    let got = MultiOp::sigma(2, 2).apply_word(&s, &word(&s, "1|y|y|1")).unwrap();
    assert_eq!(got, elt(&s, "-1|y|y|1"));
    // an even letter crossing an odd one gives no sign
    let got = MultiOp::sigma(2, 2).apply_word(&s, &word(&s, "1|y|z|1")).unwrap();
    assert_eq!(got, elt(&s, "1|z|y|1"));
}

#[test]
fn sigma_involution_on_all_four_letter_words() {
    let h = make_ex1();
    let s = h.space();
    let twice = compose(vec![MultiOp::sigma(2, 2), MultiOp::sigma(2, 2)]);
    for w in s.basis(4) {
        assert_eq!(twice.apply_word(s, &w).unwrap(), Element::basis(s, w.clone()));
    }
    assert_eq!(s.basis(4).count(), 16);
}

#[test]
fn iterated_maps_by_hand() {
    let h = make_ex1();
    let s = h.space();
    assert!(matches!(h.f(1).kind(), bialgebra::OpKind::Identity));
    assert!(matches!(h.g(1).kind(), bialgebra::OpKind::Identity));
    assert_eq!(h.f(2).apply_word(s, &word(s, "y")).unwrap(), elt(s, "1|y + y|1"));
    assert_eq!(h.f(3).apply_word(s, &word(s, "y")).unwrap(), elt(s, "1|1|y + 1|y|1 + y|1|1"));
    assert_eq!(h.g(3).apply_word(s, &word(s, "1|y|1")).unwrap(), elt(s, "y"));
    for m in 2..=5 {
        let ys = vec!["y"; m].join("|");
        assert!(h.g(m).apply_word(s, &word(s, &ys)).unwrap().is_zero());
    }
}

#[test]
fn cobar_on_ex1_omega() {
    let h = make_ex1();
    let s = h.space();
    assert!(op_equal(s, &h.cobar(1), h.coproduct()).unwrap());
    let image = h.cobar(3).apply(&elt(s, "y|1|1 + 1|1|y")).unwrap();
    assert_eq!(image, elt(s, "y|1|1|1 + 1|1|y|1 + 1|y|1|1 + 1|1|1|y"));
}

#[test]
fn bar_survives_only_in_the_last_slot() {
    let odd = Space::new(Ring::Rationals, GeneratorTable::new(&[("y", 1)]).unwrap());
    let h = bialgebra::HopfStructure::trivial("odd", &odd).unwrap();
    for m in 2..=5 {
        let input = format!("{}|1", vec!["y"; m].join("|"));
        let expected = Element::monomial(&odd, Word::new(vec![1; m]), Scalar::from_int(odd.ring(), Sign::pow(m as i64 + 1).as_int())).unwrap();
        assert_eq!(h.bar(m, BarSign::Relation).apply_word(&odd, &word(&odd, &input)).unwrap(), expected);
        assert_eq!(h.bar(m, BarSign::Negated).apply_word(&odd, &word(&odd, &input)).unwrap(), expected.neg());
    }
    let ex1 = make_ex1();
    let s = ex1.space();
    // over Z2 the global sign is invisible and ∂₁ = μ
    assert!(op_equal(s, &ex1.bar(1, BarSign::Negated), ex1.product()).unwrap());
}

#[test]
fn signed_power_signs() {
    assert_eq!(calculus::signed_power_sign(PowerOf::Coproduct, 2), Sign::Minus);
    assert_eq!(calculus::signed_power_sign(PowerOf::Product, 2), Sign::Minus);
    assert_eq!(calculus::signed_power_sign(PowerOf::Coproduct, 4), Sign::Plus);
    assert_eq!(calculus::signed_power_sign(PowerOf::Product, 3), Sign::Plus);
    let s = mixed_space();
    let h = dense_structure(&s, 2, 2, &[1]);
    let minus_dd = calculus::signed_power(h.coproduct(), PowerOf::Coproduct, 2);
    let dd = calculus::tensor_power(h.coproduct(), 2);
    assert!(full_equal(&s, &minus_dd, &dd.neg()));
}

#[test]
fn classical_identities() {
    for h in [make_ex1(), make_theorem1(TypeParams::new(3, 4, 1, 3).unwrap(), BaseRing::Rationals).unwrap()] {
        let s = h.space();
        let (mu, d) = (h.product(), h.coproduct());
        let coassoc = (
            compose(vec![tensor(vec![d.clone(), id(1)]), d.clone()]),
            compose(vec![tensor(vec![id(1), d.clone()]), d.clone()]),
        );
        let assoc = (
            compose(vec![mu.clone(), tensor(vec![mu.clone(), id(1)])]),
            compose(vec![mu.clone(), tensor(vec![id(1), mu.clone()])]),
        );
        let hopf = (
            compose(vec![d.clone(), mu.clone()]),
            compose(vec![tensor(vec![mu.clone(), mu.clone()]), MultiOp::sigma(2, 2), tensor(vec![d.clone(), d.clone()])]),
        );
        for (a, b) in [coassoc, assoc, hopf] {
            assert!(op_equal(s, &a, &b).unwrap());
            assert!(full_equal(s, &a, &b));
        }
    }
}

/// The (2,3) renditions of Relations 1, 2 and 4d, built from primitives,
/// against the general builders, on a structure where every term is
/// nonzero somewhere.
#[test]
fn renditions_for_type_2_3() {
    let s = mixed_space();
    let h = dense_structure(&s, 2, 3, &[2, -3, 5, 1, -1, 7]);
    let w = h.omega().unwrap().op.clone();
    let (mu, d) = (h.product().clone(), h.coproduct().clone());
    let conv = Conventions::default();

    let cobar3 = sum(vec![
        tensor(vec![d.clone(), id(2)]),
        tensor(vec![id(1), d.clone(), id(1)]).neg(),
        tensor(vec![id(2), d.clone()]),
    ]);
    let r1_lhs = compose(vec![cobar3, w.clone()]);
    let r1_rhs = compose(vec![
        sum(vec![tensor(vec![mu.clone(), w.clone()]), tensor(vec![w.clone(), mu.clone()])]),
        MultiOp::sigma(2, 2),
        tensor(vec![d.clone(), d.clone()]),
    ]);
    let (lhs, rhs) = relations::relation1(&h, h.omega().unwrap()).unwrap();
    assert!(full_equal(&s, &lhs, &r1_lhs));
    assert!(full_equal(&s, &rhs, &r1_rhs));
    assert!(!full_zero(&s, &r1_rhs));

    let left3 = compose(vec![tensor(vec![d.clone(), id(1)]), d.clone()]);
    let right3 = compose(vec![tensor(vec![id(1), d.clone()]), d.clone()]);
    let r2_lhs = compose(vec![w.clone(), sum(vec![tensor(vec![mu.clone(), id(1)]), tensor(vec![id(1), mu.clone()]).neg()])]);
    let inner = sum(vec![tensor(vec![left3.clone(), w.clone()]), tensor(vec![w.clone(), right3.clone()]).neg()]);
    let r2_rhs = compose(vec![calculus::tensor_power(&mu, 3), MultiOp::sigma(3, 2), inner.clone()]);
    let (lhs, rhs) = relations::relation2(&h, h.omega().unwrap(), conv).unwrap();
    assert!(full_equal(&s, &lhs, &r2_lhs));
    assert!(full_equal(&s, &rhs, &r2_rhs));
    assert!(!full_zero(&s, &r2_rhs));

    let outer = sum(vec![
        tensor(vec![w.clone(), mu.clone(), mu.clone()]),
        tensor(vec![mu.clone(), w.clone(), mu.clone()]),
        tensor(vec![mu.clone(), mu.clone(), w.clone()]),
    ]);
    let r4d = compose(vec![outer, MultiOp::sigma(3, 2), inner]);
    assert!(!full_zero(&s, &r4d));
    let built = relations::build_relation(&h, RelationId::R4d, conv).unwrap();
    let [Component::Vanishing { terms }] = built.components.as_slice() else {
        panic!("R4d has one component for n = 3");
    };
    let signed = sum(terms.iter().map(|t| MultiOp::scaled(t.sign.unwrap(), t.op.clone())).collect());
    assert!(full_equal(&s, &signed, &r4d));
}

#[test]
fn r4d_signs_for_n_4() {
    // μ³⊗ω (+), μ²⊗ω⊗μ (-(-1)^4 = -), μ⊗ω⊗μ² (+), ω⊗μ³ (-), in that order
    let s = mixed_space();
    let h = dense_structure(&s, 2, 4, &[1, 2, -1]);
    let built = relations::build_relation(&h, RelationId::R4d, Conventions::default()).unwrap();
    let [Component::Vanishing { terms }] = built.components.as_slice() else { panic!() };
    let outer_signs: Vec<Sign> = terms.iter().step_by(2).map(|t| t.sign.unwrap()).collect();
    assert_eq!(outer_signs, vec![Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus]);
    assert!(terms[0].label.starts_with("(μ⊗μ⊗μ⊗ω)"), "{}", terms[0].label);
}

#[test]
fn support_restriction_matches_the_full_basis() {
    let structures = [
        make_ex1(),
        make_theorem1(TypeParams::new(2, 2, 1, 2).unwrap(), BaseRing::Z2).unwrap(),
        make_theorem1(TypeParams::new(2, 3, 1, 1).unwrap(), BaseRing::Rationals).unwrap(),
        dense_structure(&mixed_space(), 2, 3, &[1, -2, 3]),
        dense_structure(&mixed_space(), 2, 2, &[1, 1, -1]),
    ];
    for h in &structures {
        let s = h.space();
        for rel in build_relations(h, Conventions::default()).unwrap() {
            let report = relations::check_relation(s, &rel, VerificationMode::TermwiseZero).unwrap();
            let expected = rel.components.iter().all(|c| match c {
                Component::Equation { lhs, rhs } => full_equal(s, lhs, rhs),
                Component::Vanishing { terms } => terms.iter().all(|t| full_zero(s, &t.op)),
            });
            assert_eq!(report.passed, expected, "{} {}", h.name(), rel.id);
        }
    }
}

#[test]
fn termwise_zero_holds_under_every_sign_assignment() {
    let h = make_theorem1(TypeParams::new(2, 3, 1, 1).unwrap(), BaseRing::Rationals).unwrap();
    let s = h.space();
    for rel in build_relations(&h, Conventions::default()).unwrap() {
        if !rel.id.uses_mode() {
            continue;
        }
        for c in &rel.components {
            let Component::Vanishing { terms } = c else { continue };
            assert!(terms.len() <= 8);
            for mask in 0u32..(1 << terms.len()) {
                let signed = sum(
                    terms
                        .iter()
                        .enumerate()
                        .map(|(i, t)| MultiOp::scaled(Sign::pow(((mask >> i) & 1) as i64), t.op.clone()))
                        .collect(),
                );
                assert!(full_zero(s, &signed), "{} mask {mask}", rel.id);
            }
        }
    }
}

#[test]
fn exact_mode_needs_characteristic_two_for_unknown_signs() {
    let h = make_theorem1(TypeParams::new(3, 4, 1, 3).unwrap(), BaseRing::Rationals).unwrap();
    let err = relations::verify(&h, VerificationMode::Exact, Conventions::default()).unwrap_err();
    assert!(matches!(err, bialgebra::Error::ModeNotApplicable { .. }), "{err}");
    let h = make_theorem1(TypeParams::new(3, 4, 1, 3).unwrap(), BaseRing::Z2).unwrap();
    assert!(relations::verify(&h, VerificationMode::Exact, Conventions::default()).unwrap().passed());
}

fn ex1_with(entries: &[(&str, &str)]) -> bialgebra::HopfStructure {
    let mut text = String::from("ring Z2\ngenerator y -2\ntype 2 3\ndegree 2\n");
    for (w, image) in entries {
        text.push_str(&format!("omega {w} -> {image}\n"));
    }
    bialgebra::describe::parse(&text).unwrap()
}

#[test]
fn negative_controls() {
    let failing = [
        vec![("y|y", "y|1|1 + 1|1|y + 1|y|1")],
        vec![("y|y", "y|1|1 + 1|1|y"), ("1|y", "1|1|1")],
        vec![("y|y", "y|1|1 + 1|1|y"), ("y|1", "1|1|1")],
    ];
    for entries in &failing {
        let v = relations::verify(&ex1_with(entries), VerificationMode::Exact, Conventions::default()).unwrap();
        let bad: Vec<_> = v.reports.iter().filter(|r| !r.passed).collect();
        assert!(!bad.is_empty(), "{entries:?}");
        for r in bad {
            let w = r.witness.as_ref().expect("failures carry a witness");
            assert_ne!(w.lhs, w.rhs);
        }
    }
}

/// Adding y|1|1 or 1|1|y to ω(y|y) over Z2 leaves a single term, and that
/// operation is itself a structure of type (2,3).
#[test]
fn single_term_perturbations_are_structures_too() {
    for (image, rhs) in [("1|1|y", "1|1|1|y + 1|1|y|1"), ("y|1|1", "y|1|1|1 + 1|y|1|1")] {
        let h = ex1_with(&[("y|y", image)]);
        let s = h.space();
        // by hand: δ³(1|1|y) = 3·1|1|1|y + 1|1|y|1 and the right-hand side is
        // μ(1|1)⊗ω(y|y) + ω(y|y)⊗μ(1|1)
        let (lhs_op, rhs_op) = relations::relation1(&h, h.omega().unwrap()).unwrap();
        assert_eq!(lhs_op.apply_word(s, &word(s, "y|y")).unwrap(), elt(s, rhs));
        assert_eq!(rhs_op.apply_word(s, &word(s, "y|y")).unwrap(), elt(s, rhs));
        assert!(relations::verify(&h, VerificationMode::Exact, Conventions::default()).unwrap().passed());
    }
}

#[test]
fn synthetic_type_2_2_fails_r6() {
    let text = "ring Z2\ngenerator y 1\ntype 2 2\nomega y|y -> y|y\n";
    let h = bialgebra::describe::parse(text).unwrap();
    let v = relations::verify(&h, VerificationMode::Exact, Conventions::default()).unwrap();
    assert!(!v.degree.passed());
    let r6 = v.reports.iter().find(|r| r.relation == RelationId::R6).unwrap();
    assert!(!r6.passed);
    let w = r6.witness.as_ref().unwrap();
    assert_eq!(h.space().format_word(&w.input), "y|y|y|y");
    assert_eq!(w.lhs.to_string(), "y|y|y|y");
    assert!(w.rhs.is_zero());
}

#[test]
fn witness_is_the_least_failing_word_in_any_order() {
    let s = mixed_space();
    let h = dense_structure(&s, 2, 2, &[1, 2, -1, 3]);
    let v = relations::verify(&h, VerificationMode::TermwiseZero, Conventions::default()).unwrap();
    let again = relations::verify(&h, VerificationMode::TermwiseZero, Conventions::default()).unwrap();
    assert_eq!(v, again);
    for rel in build_relations(&h, Conventions::default()).unwrap() {
        let report = v.reports.iter().find(|r| r.relation == rel.id).unwrap();
        let Some(witness) = &report.witness else { continue };
        // first failing component, reversed iteration, least word
        for c in &rel.components {
            let words: Vec<Word> = s.basis(match c {
                Component::Equation { lhs, .. } => lhs.inputs(),
                Component::Vanishing { terms } => terms[0].op.inputs(),
            })
            .collect();
            let failing = words.iter().rev().filter(|w| match c {
                Component::Equation { lhs, rhs } => {
                    lhs.apply_word_unpruned(&s, w).unwrap() != rhs.apply_word_unpruned(&s, w).unwrap()
                }
                Component::Vanishing { terms } => terms
                    .iter()
                    .take_while(|t| witness.term.as_deref() != Some(t.label.as_str()))
                    .chain(terms.iter().find(|t| witness.term.as_deref() == Some(t.label.as_str())))
                    .last()
                    .is_some_and(|t| !t.op.apply_word_unpruned(&s, w).unwrap().is_zero()),
            });
            if let Some(least) = failing.min() {
                assert_eq!(&witness.input, least, "{}", rel.id);
                break;
            }
        }
    }
}

#[test]
fn degree_shift_is_enforced_for_tables() {
    let s = mixed_space();
    let bad = vec![(word(&s, "y"), elt(&s, "y|y"))];
    assert!(MultiOp::table(&s, 1, 2, 0, bad).is_err());
    let x = Ring::exterior(BaseRing::Rationals, 3);
    let e = Space::new(x, GeneratorTable::new(&[("y", 1)]).unwrap());
    let image = Element::parse(&e, "x*y|y|y").unwrap();
    assert_eq!(image.degree().unwrap(), bialgebra::Degree::Homogeneous(6));
}

#[test]
fn large_n_solutions_are_all_q_1() {
    for m in 2..=6usize {
        for n in (3 * m - 2)..=60 {
            for p in 1..=(2 * m - 3) {
                for q in 1..=12usize {
                    // m(q+1) = n(q-1) + p + 3, by hand
                    if m * (q + 1) == n * (q - 1) + p + 3 {
                        assert_eq!((q, p), (1, 2 * m - 3), "({m},{n},{p},{q})");
                        assert_eq!(bialgebra::catalog::classify(m, n, p, q), Some(bialgebra::catalog::Case::Ii));
                    }
                }
            }
        }
    }
}

#[test]
fn theorem1_values_on_the_top_word() {
    let h = make_theorem1(TypeParams::new(3, 4, 1, 3).unwrap(), BaseRing::Rationals).unwrap();
    let s = h.space();
    let conv = Conventions::default();
    let (_, r1_rhs) = relations::relation1(&h, h.omega().unwrap()).unwrap();
    // x(1|y⁴) + (-1)^5 x(y⁴|1)
    assert_eq!(r1_rhs.apply_word(s, &word(s, "y|y|y")).unwrap(), elt(s, "x*1|y|y|y|y - x*y|y|y|y|1"));
    let (r2_lhs, _) = relations::relation2(&h, h.omega().unwrap(), conv).unwrap();
    // (-1)^(m+1) x y⁴
    assert_eq!(r2_lhs.apply_word(s, &word(s, "y|y|y|1")).unwrap(), elt(s, "x*y|y|y|y"));
    assert_eq!(s.word_degree(&[1]), 3);
}
