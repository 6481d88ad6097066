//! Elements of `H^{⊗k}`: finite linear combinations of words, kept in normal
//! form (no zero coefficients, each word once, every coefficient factored to
//! the front of its word).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{write_coefficient, Scalar};
use crate::space::{Space, Word};

/// The degree of a nonzero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(i64),
    Mixed,
}

#[derive(Clone)]
pub struct Element {
    space: Arc<Space>,
    arity: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero(space: &Arc<Space>, arity: usize) -> Element {
        Element {
            space: Arc::clone(space),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(space: &Arc<Space>, word: Word) -> Element {
        let one = Scalar::one(space.ring());
        Element::monomial(space, word, one).expect("unit lives in the space's ring")
    }

    pub fn monomial(space: &Arc<Space>, word: Word, coefficient: Scalar) -> Result<Element> {
        let mut e = Element::zero(space, word.len());
        e.check_scalar(&coefficient)?;
        e.accumulate(word, coefficient);
        Ok(e)
    }

    /// Builds an element from raw terms, merging repeated words.
    pub fn from_terms(
        space: &Arc<Space>,
        arity: usize,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Element> {
        let mut e = Element::zero(space, arity);
        for (word, c) in terms {
            if word.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: word.len(),
                });
            }
            e.check_scalar(&c)?;
            e.accumulate(word, c);
        }
        Ok(e)
    }

    /// Parses `y|1 + 1|y`, `x*y|y|y - 2*1|y`, or `0` (which needs `arity`).
    pub fn parse(space: &Arc<Space>, text: &str) -> Result<Element> {
        parse_element(space, text, None)
    }

    pub fn parse_with_arity(space: &Arc<Space>, arity: usize, text: &str) -> Result<Element> {
        parse_element(space, text, Some(arity))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms
            .get(word)
            .copied()
            .unwrap_or_else(|| Scalar::zero(self.space.ring()))
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.map_coefficients(|c| c.neg())
    }

    /// Left multiplication by a scalar (the scalar already sits in front).
    pub fn scale(&self, by: &Scalar) -> Result<Element> {
        self.check_scalar(by)?;
        Ok(self.map_coefficients(|c| by.mul_same(c)))
    }

    /// `u ⊗ v`. The coefficient of `v` is moved to the front past the words of
    /// `u`, picking up the Koszul sign of its `x` part.
    pub fn tensor(&self, other: &Element) -> Result<Element> {
        if !self.space.same_as(&other.space) {
            return Err(Error::SpaceMismatch);
        }
        let mut out = Element::zero(&self.space, self.arity + other.arity);
        for (u, a) in &self.terms {
            let shift = self.space.word_degree(u.letters());
            for (v, b) in &other.terms {
                let c = a.mul_same(&b.pass_over(shift));
                let mut letters = Vec::with_capacity(u.len() + v.len());
                letters.extend_from_slice(u.letters());
                letters.extend_from_slice(v.letters());
                out.accumulate(Word(letters), c);
            }
        }
        Ok(out)
    }

    /// Common degree of all homogeneous pieces (word degree plus coefficient
    /// degree), or [`Degree::Mixed`].
    pub fn degree(&self) -> Result<Degree> {
        let p = self.space.ring().x_degree().unwrap_or(0);
        let mut found: Option<i64> = None;
        for (w, c) in &self.terms {
            let base = self.space.word_degree(w.letters());
            let pieces = [
                (!c.constant().is_zero()).then_some(base),
                (!c.x_part().is_zero()).then_some(base + p),
            ];
            for d in pieces.into_iter().flatten() {
                match found {
                    None => found = Some(d),
                    Some(e) if e != d => return Ok(Degree::Mixed),
                    Some(_) => {}
                }
            }
        }
        found.map(Degree::Homogeneous).ok_or(Error::UndefinedDegree)
    }

    pub(crate) fn accumulate(&mut self, word: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add_same(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn check_scalar(&self, c: &Scalar) -> Result<()> {
        if c.ring() != self.space.ring() {
            return Err(Error::RingMismatch {
                left: self.space.ring(),
                right: c.ring(),
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        if !self.space.same_as(&other.space) {
            if self.space.ring() != other.space.ring() {
                return Err(Error::RingMismatch {
                    left: self.space.ring(),
                    right: other.space.ring(),
                });
            }
            return Err(Error::SpaceMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let mut out = Element::zero(&self.space, self.arity);
        for (w, c) in &self.terms {
            out.accumulate(w.clone(), f(c));
        }
        out
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        self.space.same_as(&other.space) && self.arity == other.arity && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({self})", self.arity)
    }
}

/// Canonical text: words in lexicographic order, each word's constant part
/// printed before its `x` part.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut leading = true;
        for (w, c) in &self.terms {
            let word = self.space.format_word(w);
            for (value, what) in [(c.constant(), ""), (c.x_part(), "x")] {
                if value.is_zero() {
                    continue;
                }
                write_coefficient(&mut out, value, what, leading)?;
                out.push_str(&word);
                leading = false;
            }
        }
        f.write_str(&out)
    }
}

fn parse_element(space: &Arc<Space>, text: &str, arity: Option<usize>) -> Result<Element> {
    let text = text.trim();
    if text == "0" {
        let arity = arity.ok_or_else(|| Error::Parse("`0` needs an explicit arity".into()))?;
        return Ok(Element::zero(space, arity));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut negative = false;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                // consecutive signs fold together
                if !current.is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                    negative = false;
                }
                if ch == '-' {
                    negative = !negative;
                }
            }
            c if c.is_whitespace() => {}
            c => current.push(c),
        }
    }
    if current.trim().is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{text}`")));
    }
    pieces.push((negative, current));

    let ring = space.ring();
    let mut terms = Vec::with_capacity(pieces.len());
    for (negative, piece) in pieces {
        let (coefficient, word_text) = match piece.split_once('*') {
            Some((coef, word)) => (parse_coefficient(ring, coef)?, word),
            None => (Scalar::one(ring), piece.as_str()),
        };
        let word = space.parse_word(word_text)?;
        let coefficient = if negative { coefficient.neg() } else { coefficient };
        terms.push((word, coefficient));
    }
    let arity = match arity {
        Some(k) => k,
        None => terms[0].0.len(),
    };
    Element::from_terms(space, arity, terms)
}

fn parse_coefficient(ring: crate::ring::Ring, text: &str) -> Result<Scalar> {
    let (number, has_x) = match text.strip_suffix('x') {
        Some(rest) => (rest, true),
        None => (text, false),
    };
    let value = if number.is_empty() {
        Rational64::from_integer(1)
    } else {
        number
            .parse::<Rational64>()
            .map_err(|_| Error::Parse(format!("bad coefficient `{text}`")))?
    };
    if has_x {
        Scalar::new(ring, Rational64::zero(), value)
    } else {
        Scalar::new(ring, value, Rational64::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BaseRing, Ring};
    use crate::space::GeneratorTable;

    fn z2() -> Arc<Space> {
        Space::new(Ring::Z2, GeneratorTable::new(&[("y", -2)]).unwrap())
    }

    fn ext(p: i64, q: i64) -> Arc<Space> {
        Space::new(
            Ring::exterior(BaseRing::Rationals, p),
            GeneratorTable::new(&[("y", q)]).unwrap(),
        )
    }

    #[test]
    fn disjoint_sum() {
        let h = z2();
        let a = Element::parse(&h, "y|1").unwrap();
        let b = Element::parse(&h, "1|y").unwrap();
        assert_eq!(a.add(&b).unwrap().to_string(), "1|y + y|1");
    }

    #[test]
    fn characteristic_two_cancels() {
        let h = z2();
        let a = Element::parse(&h, "y|1").unwrap();
        assert!(a.add(&a).unwrap().is_zero());
    }

    #[test]
    fn like_terms_combine() {
        let h = ext(1, 1);
        let a = Element::parse(&h, "x*y|y").unwrap();
        assert_eq!(a.add(&a).unwrap().to_string(), "2x*y|y");
    }

    #[test]
    fn arity_mismatch_on_add() {
        let h = z2();
        let a = Element::parse(&h, "y|1").unwrap();
        let b = Element::parse(&h, "y").unwrap();
        assert!(matches!(a.add(&b), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn ring_mismatch_on_add() {
        let a = Element::parse(&z2(), "y").unwrap();
        let b = Element::parse(&ext(1, 1), "y").unwrap();
        assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn plain_tensor() {
        let h = z2();
        let a = Element::parse(&h, "y").unwrap();
        let b = Element::parse(&h, "1|y").unwrap();
        assert_eq!(a.tensor(&b).unwrap().to_string(), "y|1|y");
    }

    #[test]
    fn moving_x_past_odd_letter_flips_sign() {
        // y ⊗ (x·y) with |x| = |y| = 1 is -x(y|y)
        let h = ext(1, 1);
        let a = Element::parse(&h, "y").unwrap();
        let b = Element::parse(&h, "x*y").unwrap();
        assert_eq!(a.tensor(&b).unwrap(), Element::parse(&h, "-x*y|y").unwrap());
    }

    #[test]
    fn two_x_factors_vanish() {
        let h = ext(1, 1);
        let a = Element::parse(&h, "x*y").unwrap();
        assert!(a.tensor(&a).unwrap().is_zero());
    }

    #[test]
    fn degrees() {
        let h = z2();
        assert_eq!(Element::parse(&h, "y|1|1").unwrap().degree(), Ok(Degree::Homogeneous(-2)));

        let h = ext(3, 1);
        assert_eq!(Element::parse(&h, "x*y|y|y").unwrap().degree(), Ok(Degree::Homogeneous(6)));

        let h = ext(1, 1);
        assert_eq!(Element::parse(&h, "y|1 + x*1|1").unwrap().degree(), Ok(Degree::Homogeneous(1)));
        assert_eq!(Element::parse(&h, "y|1 + x*y|1").unwrap().degree(), Ok(Degree::Mixed));
        assert_eq!(Element::zero(&h, 2).degree(), Err(Error::UndefinedDegree));
    }

    #[test]
    fn display_orders_constant_before_x() {
        let h = ext(2, 1);
        let e = Element::parse(&h, "x*y|1 - 1|y + y|1 + 1/2*1|1").unwrap();
        assert_eq!(e.to_string(), "1/2*1|1 - 1|y + y|1 + x*y|1");
        assert_eq!(Element::parse(&h, &e.to_string()).unwrap(), e);
    }

    #[test]
    fn zero_needs_arity() {
        let h = z2();
        assert!(Element::parse(&h, "0").is_err());
        assert!(Element::parse_with_arity(&h, 3, "0").unwrap().is_zero());
    }
}
