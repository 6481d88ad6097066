//! Graded Hopf algebras `(H, Δ, μ)` with an optional extra operation `ω`.

use std::sync::Arc;

use crate::calculus::{self, BarSign};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::op::{first_difference, MultiOp};
use crate::space::{Space, Word, UNIT};

/// The extra operation `ω: H^{⊗m} → H^{⊗n}`.
#[derive(Debug, Clone)]
pub struct Omega {
    pub m: usize,
    pub n: usize,
    pub op: MultiOp,
}

impl Omega {
    pub fn new(op: MultiOp) -> Omega {
        Omega {
            m: op.inputs(),
            n: op.outputs(),
            op: op.with_label("ω"),
        }
    }

    /// The degree `m+n-3` required of a type-`(m,n)` operation.
    pub fn required_degree(&self) -> i64 {
        self.m as i64 + self.n as i64 - 3
    }
}

#[derive(Debug, Clone)]
pub struct HopfStructure {
    name: String,
    space: Arc<Space>,
    product: MultiOp,
    coproduct: MultiOp,
    omega: Option<Omega>,
}

impl HopfStructure {
    /// Checks shapes, unit/counit behaviour, (co)associativity and the Hopf
    /// compatibility before accepting the structure.
    pub fn new(name: impl Into<String>, space: &Arc<Space>, product: MultiOp, coproduct: MultiOp) -> Result<HopfStructure> {
        let h = HopfStructure::new_unchecked(name, space, product, coproduct)?;
        h.check_unit()?;
        for (what, lhs, rhs) in h.axioms() {
            if let Some((w, l, r)) = first_difference(&h.space, &lhs, &rhs)? {
                return Err(Error::NotHopf(format!(
                    "{what} fails on {}: {l} != {r}",
                    h.space.format_word(&w)
                )));
            }
        }
        Ok(h)
    }

    /// Only checks arities and degrees; the axioms are left to the verifier.
    pub fn new_unchecked(
        name: impl Into<String>,
        space: &Arc<Space>,
        product: MultiOp,
        coproduct: MultiOp,
    ) -> Result<HopfStructure> {
        if (product.inputs(), product.outputs(), product.degree()) != (2, 1, 0) {
            return Err(Error::MalformedOp("the product must be a degree-0 map H⊗H → H".into()));
        }
        if (coproduct.inputs(), coproduct.outputs(), coproduct.degree()) != (1, 2, 0) {
            return Err(Error::MalformedOp("the coproduct must be a degree-0 map H → H⊗H".into()));
        }
        product.check_space(space)?;
        coproduct.check_space(space)?;
        Ok(HopfStructure {
            name: name.into(),
            space: Arc::clone(space),
            product: product.with_label("μ"),
            coproduct: coproduct.with_label("Δ"),
            omega: None,
        })
    }

    /// Trivial product (`μ(1|h) = μ(h|1) = h`, all other products zero) and
    /// primitive coproduct (`Δ(1) = 1|1`, `Δ(g) = 1|g + g|1`).
    pub fn trivial(name: impl Into<String>, space: &Arc<Space>) -> Result<HopfStructure> {
        HopfStructure::new(name, space, trivial_product(space)?, primitive_coproduct(space)?)
    }

    pub fn with_omega(mut self, op: MultiOp) -> Result<HopfStructure> {
        op.check_space(&self.space)?;
        self.omega = Some(Omega::new(op));
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn product(&self) -> &MultiOp {
        &self.product
    }

    pub fn coproduct(&self) -> &MultiOp {
        &self.coproduct
    }

    pub fn omega(&self) -> Option<&Omega> {
        self.omega.as_ref()
    }

    /// `fⁿ`.
    pub fn f(&self, n: usize) -> MultiOp {
        calculus::iterated_coproduct(&self.coproduct, n)
    }

    /// `g_m`.
    pub fn g(&self, m: usize) -> MultiOp {
        calculus::iterated_product(&self.product, m)
    }

    /// `δᵏ`.
    pub fn cobar(&self, k: usize) -> MultiOp {
        calculus::cobar_component(&self.coproduct, k)
    }

    /// `∂_k`.
    pub fn bar(&self, k: usize, convention: BarSign) -> MultiOp {
        calculus::bar_component(&self.product, k, convention)
    }

    /// `(name, lhs, rhs)` for associativity, coassociativity and the Hopf
    /// compatibility `Δμ = (μ⊗μ)σ_{2,2}(Δ⊗Δ)`.
    pub fn axioms(&self) -> Vec<(&'static str, MultiOp, MultiOp)> {
        let mu = &self.product;
        let delta = &self.coproduct;
        let c = |v: Vec<MultiOp>| MultiOp::compose(v).expect("axiom shapes chain");
        let t = |v: Vec<MultiOp>| MultiOp::tensor(v).expect("nonempty");
        vec![
            (
                "associativity",
                c(vec![mu.clone(), calculus::slot(mu, 0, 1)]),
                c(vec![mu.clone(), calculus::slot(mu, 1, 0)]),
            ),
            (
                "coassociativity",
                c(vec![calculus::slot(delta, 0, 1), delta.clone()]),
                c(vec![calculus::slot(delta, 1, 0), delta.clone()]),
            ),
            (
                "Hopf compatibility",
                c(vec![delta.clone(), mu.clone()]),
                c(vec![
                    t(vec![mu.clone(), mu.clone()]),
                    MultiOp::sigma(2, 2),
                    t(vec![delta.clone(), delta.clone()]),
                ]),
            ),
        ]
    }

    fn check_unit(&self) -> Result<()> {
        let h = &self.space;
        for g in h.generators().letters() {
            let single = Element::basis(h, Word::new(vec![g]));
            for word in [Word::new(vec![UNIT, g]), Word::new(vec![g, UNIT])] {
                let image = self.product.apply_word(h, &word)?;
                if image != single {
                    return Err(Error::NotHopf(format!(
                        "μ({}) = {image}, expected {single}",
                        h.format_word(&word)
                    )));
                }
            }
        }
        let unit = self.coproduct.apply_word(h, &Word::units(1))?;
        if unit != Element::basis(h, Word::units(2)) {
            return Err(Error::NotHopf(format!("Δ(1) = {unit}, expected 1|1")));
        }
        Ok(())
    }
}

pub fn trivial_product(space: &Arc<Space>) -> Result<MultiOp> {
    let mut entries = Vec::new();
    for g in space.generators().letters() {
        let image = Element::basis(space, Word::new(vec![g]));
        entries.push((Word::new(vec![UNIT, g]), image.clone()));
        if g != UNIT {
            entries.push((Word::new(vec![g, UNIT]), image));
        }
    }
    MultiOp::table(space, 2, 1, 0, entries)
}

pub fn primitive_coproduct(space: &Arc<Space>) -> Result<MultiOp> {
    let mut entries = Vec::new();
    for g in space.generators().letters() {
        let mut image = Element::basis(space, Word::new(vec![UNIT, g]));
        if g != UNIT {
            image = image.add(&Element::basis(space, Word::new(vec![g, UNIT])))?;
        }
        entries.push((Word::new(vec![g]), image));
    }
    MultiOp::table(space, 1, 2, 0, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BaseRing, Ring};
    use crate::space::GeneratorTable;

    fn space(ring: Ring, q: i64) -> Arc<Space> {
        Space::new(ring, GeneratorTable::new(&[("y", q)]).unwrap())
    }

    #[test]
    fn trivial_structure_is_hopf_over_z2() {
        let h = space(Ring::Z2, -2);
        assert!(HopfStructure::trivial("ex", &h).is_ok());
    }

    #[test]
    fn odd_generator_over_q_is_hopf() {
        let h = space(Ring::exterior(BaseRing::Rationals, 1), 3);
        assert!(HopfStructure::trivial("odd", &h).is_ok());
    }

    #[test]
    fn even_generator_over_q_is_not_hopf() {
        // Δμ(y|y) = 0 but (μ⊗μ)σ(Δ⊗Δ)(y|y) = 2 y|y
        let h = space(Ring::Rationals, 2);
        let err = HopfStructure::trivial("even", &h).unwrap_err();
        assert!(matches!(err, Error::NotHopf(_)), "{err}");
    }

    #[test]
    fn unit_axiom_is_enforced() {
        let h = space(Ring::Z2, 1);
        let zero_product = MultiOp::zero(2, 1, 0);
        let err = HopfStructure::new("bad", &h, zero_product, primitive_coproduct(&h).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotHopf(_)));
    }

    #[test]
    fn shapes_are_checked() {
        let h = space(Ring::Z2, 1);
        let mu = trivial_product(&h).unwrap();
        assert!(HopfStructure::new_unchecked("bad", &h, mu.clone(), mu).is_err());
    }
}
