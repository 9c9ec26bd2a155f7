use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exponent of the base infinitesimal in a series term: a rational kept in
/// lowest terms with positive denominator. Rational (rather than integer)
/// exponents let square roots of monomials stay inside the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Rational64);

impl Exponent {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Exponent(Rational64::new(numer, denom)))
    }

    pub fn integer(n: i64) -> Self {
        Exponent(Rational64::from_integer(n))
    }

    pub fn zero() -> Self {
        Exponent(Rational64::zero())
    }

    pub fn from_rational(r: Rational64) -> Self {
        Exponent(r)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn as_rational(&self) -> Rational64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0 > Rational64::zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Rational64::zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Scales by a rational factor, as when raising a monomial to a power.
    pub fn scale(&self, factor: Rational64) -> Self {
        Exponent(self.0 * factor)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl Mul<u32> for Exponent {
    type Output = Exponent;
    fn mul(self, rhs: u32) -> Exponent {
        Exponent(self.0 * Rational64::from_integer(rhs as i64))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let e = Exponent::new(4, 6).unwrap();
        assert_eq!((e.numer(), e.denom()), (2, 3));
        let neg = Exponent::new(3, -2).unwrap();
        assert_eq!((neg.numer(), neg.denom()), (-3, 2));
        assert!(Exponent::new(1, 0).is_err());
    }

    #[test]
    fn ordering() {
        let half = Exponent::new(1, 2).unwrap();
        let third = Exponent::new(1, 3).unwrap();
        assert!(third < half);
        assert!(Exponent::integer(-1) < Exponent::zero());
    }

    #[test]
    fn display() {
        assert_eq!(Exponent::integer(-1).to_string(), "-1");
        assert_eq!(Exponent::new(3, 2).unwrap().to_string(), "3/2");
    }
}
