//! Coefficient rings: `Z2`, `Q`, and the exterior ring `E(x)` over either.
//!
//! A [`Scalar`] is stored as `c + c'·x` with `c, c'` in the base ring. For
//! non-exterior rings the `x` part is always zero. Multiplication drops the
//! `x·x` cross term.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    Z2,
    Rationals,
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Z2 => f.write_str("Z2"),
            BaseRing::Rationals => f.write_str("Q"),
        }
    }
}

/// The coefficient ring of a graded module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Z2,
    Rationals,
    /// `E(x)` over `base`, with `|x| = x_degree`.
    Exterior { base: BaseRing, x_degree: i64 },
}

impl Ring {
    pub fn exterior(base: BaseRing, x_degree: i64) -> Ring {
        Ring::Exterior { base, x_degree }
    }

    pub fn base(&self) -> BaseRing {
        match *self {
            Ring::Z2 => BaseRing::Z2,
            Ring::Rationals => BaseRing::Rationals,
            Ring::Exterior { base, .. } => base,
        }
    }

    pub fn x_degree(&self) -> Option<i64> {
        match *self {
            Ring::Exterior { x_degree, .. } => Some(x_degree),
            _ => None,
        }
    }

    /// True when `a = -a` for every coefficient.
    pub fn is_char_two(&self) -> bool {
        self.base() == BaseRing::Z2
    }

    fn reduce(&self, value: Rational64) -> Result<Rational64> {
        match self.base() {
            BaseRing::Rationals => Ok(value),
            BaseRing::Z2 => {
                if value.denom() % 2 == 0 {
                    return Err(Error::BadCoefficient(value.to_string()));
                }
                Ok(Rational64::from_integer(value.numer().rem_euclid(2)))
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z2 => f.write_str("Z2"),
            Ring::Rationals => f.write_str("Q"),
            Ring::Exterior { base, x_degree } => write!(f, "E(x; |x|={x_degree}) over {base}"),
        }
    }
}

/// An element `constant + x_part·x` of a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: Ring,
    constant: Rational64,
    x_part: Rational64,
}

impl Scalar {
    pub fn new(ring: Ring, constant: Rational64, x_part: Rational64) -> Result<Scalar> {
        if ring.x_degree().is_none() && !x_part.is_zero() {
            return Err(Error::BadCoefficient(format!("{x_part}x")));
        }
        Ok(Scalar {
            ring,
            constant: ring.reduce(constant)?,
            x_part: ring.reduce(x_part)?,
        })
    }

    pub fn zero(ring: Ring) -> Scalar {
        Scalar {
            ring,
            constant: Rational64::zero(),
            x_part: Rational64::zero(),
        }
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::from_int(ring, 1)
    }

    pub fn from_int(ring: Ring, value: i64) -> Scalar {
        Scalar::new(ring, Rational64::from_integer(value), Rational64::zero())
            .expect("integers live in every base ring")
    }

    /// The exterior generator `x`. Fails outside `E(x)`.
    pub fn x(ring: Ring) -> Result<Scalar> {
        Scalar::new(ring, Rational64::zero(), Rational64::one())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn constant(&self) -> Rational64 {
        self.constant
    }

    pub fn x_part(&self) -> Rational64 {
        self.x_part
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.x_part.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.x_part.is_zero()
    }

    /// Degree of a homogeneous scalar; `None` for zero or a mixed `c + c'x`
    /// with `|x| != 0`.
    pub fn degree(&self) -> Option<i64> {
        let p = self.ring.x_degree().unwrap_or(0);
        match (self.constant.is_zero(), self.x_part.is_zero()) {
            (true, true) => None,
            (false, true) => Some(0),
            (true, false) => Some(p),
            (false, false) => (p == 0).then_some(0),
        }
    }

    pub fn neg(&self) -> Scalar {
        self.map(|c| -c, |x| -x)
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(self.add_same(other))
    }

    /// Ring product; `x·x = 0`.
    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        Ok(self.mul_same(other))
    }

    pub fn scale(&self, k: i64) -> Scalar {
        let k = Rational64::from_integer(k);
        self.map(|c| c * k, |x| x * k)
    }

    /// The sign picked up when this scalar moves past a symbol of degree
    /// `degree`: only the `x` part is graded, so only it can flip.
    pub fn pass_over(&self, degree: i64) -> Scalar {
        match self.ring.x_degree() {
            Some(p) if (p * degree) % 2 != 0 => Scalar {
                x_part: self.ring.reduce(-self.x_part).expect("reduction is closed"),
                ..*self
            },
            _ => *self,
        }
    }

    pub(crate) fn add_same(&self, other: &Scalar) -> Scalar {
        debug_assert_eq!(self.ring, other.ring);
        self.combine(
            self.constant + other.constant,
            self.x_part + other.x_part,
        )
    }

    pub(crate) fn mul_same(&self, other: &Scalar) -> Scalar {
        debug_assert_eq!(self.ring, other.ring);
        self.combine(
            self.constant * other.constant,
            self.constant * other.x_part + self.x_part * other.constant,
        )
    }

    fn check_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    fn map(
        &self,
        on_constant: impl Fn(Rational64) -> Rational64,
        on_x: impl Fn(Rational64) -> Rational64,
    ) -> Scalar {
        self.combine(on_constant(self.constant), on_x(self.x_part))
    }

    fn combine(&self, constant: Rational64, x_part: Rational64) -> Scalar {
        Scalar {
            ring: self.ring,
            constant: self.ring.reduce(constant).expect("reduction is closed"),
            x_part: self.ring.reduce(x_part).expect("reduction is closed"),
        }
    }
}

pub fn scalar_mul(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.mul(b)
}

/// Formats a single base-ring coefficient in front of `what` ("" or "x").
pub(crate) fn write_coefficient(
    f: &mut impl fmt::Write,
    value: Rational64,
    what: &str,
    leading: bool,
) -> fmt::Result {
    let negative = value.is_negative();
    let magnitude = value.abs();
    match (leading, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    match (magnitude.is_one(), what.is_empty()) {
        (true, true) => Ok(()),
        (true, false) => write!(f, "{what}*"),
        (false, _) => write!(f, "{magnitude}{what}*"),
    }
}
