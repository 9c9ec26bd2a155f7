use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::context::ScalarMode;
use crate::error::{Error, Result};

/// Three-valued sign of a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign3 {
    Negative,
    Zero,
    Positive,
}

impl fmt::Display for Sign3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign3::Negative => write!(f, "negative"),
            Sign3::Zero => write!(f, "zero"),
            Sign3::Positive => write!(f, "positive"),
        }
    }
}

/// Coefficient of a series term: an exact rational or a binary64 float,
/// never both in one computation.
///
/// Whole-number and ratio constructors honor the requested mode; arithmetic
/// between mismatched modes is a programming error and panics (the public
/// entry points reject mixed inputs with [`Error::ModeMismatch`] first).
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::Exact(BigRational::zero()),
            ScalarMode::Float => Scalar::Float(0.0),
        }
    }

    pub fn one(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::Exact(BigRational::one()),
            ScalarMode::Float => Scalar::Float(1.0),
        }
    }

    pub fn from_integer(n: i64, mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::Exact(BigRational::from_integer(n.into())),
            ScalarMode::Float => Scalar::Float(n as f64),
        }
    }

    pub fn from_ratio(numer: i64, denom: i64, mode: ScalarMode) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match mode {
            ScalarMode::Exact => {
                Scalar::Exact(BigRational::new(numer.into(), denom.into()))
            }
            ScalarMode::Float => Scalar::Float(numer as f64 / denom as f64),
        })
    }

    pub fn from_rational64(r: Rational64, mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Exact => {
                Scalar::Exact(BigRational::new((*r.numer()).into(), (*r.denom()).into()))
            }
            ScalarMode::Float => Scalar::Float(*r.numer() as f64 / *r.denom() as f64),
        }
    }

    pub fn from_big_rational(r: BigRational, mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::Exact => Scalar::Exact(r),
            ScalarMode::Float => Scalar::Float(big_rational_to_f64(&r)),
        }
    }

    pub fn from_f64(v: f64) -> Self {
        Scalar::Float(v)
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Exact(_) => ScalarMode::Exact,
            Scalar::Float(_) => ScalarMode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(v) => *v == 1.0,
        }
    }

    pub fn sign(&self) -> Sign3 {
        match self {
            Scalar::Exact(r) => {
                if r.is_zero() {
                    Sign3::Zero
                } else if r.is_positive() {
                    Sign3::Positive
                } else {
                    Sign3::Negative
                }
            }
            Scalar::Float(v) => {
                if *v == 0.0 {
                    Sign3::Zero
                } else if *v > 0.0 {
                    Sign3::Positive
                } else {
                    Sign3::Negative
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => panic!("scalar mode mismatch"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            _ => panic!("scalar mode mismatch"),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => panic!("scalar mode mismatch"),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => panic!("scalar mode mismatch"),
        })
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one(self.mode()).div(self)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow_integer(&self, n: i64) -> Result<Scalar> {
        if n == 0 {
            return Ok(Scalar::one(self.mode()));
        }
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut exp = n.unsigned_abs();
        let mut acc = Scalar::one(self.mode());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Rational power. In exact mode the root must be exactly representable;
    /// fractional powers of negative values are rejected in both modes.
    pub fn pow_rational(&self, r: Rational64) -> Result<Scalar> {
        let p = *r.numer();
        let q = *r.denom();
        if self.is_zero() {
            return if p > 0 {
                Ok(Scalar::zero(self.mode()))
            } else if p == 0 {
                Ok(Scalar::one(self.mode()))
            } else {
                Err(Error::DivisionByZero)
            };
        }
        if q == 1 {
            return self.pow_integer(p);
        }
        if self.sign() == Sign3::Negative {
            return Err(Error::FractionalPowerOfNegative);
        }
        match self {
            Scalar::Float(v) => Ok(Scalar::Float(v.powf(p as f64 / q as f64))),
            Scalar::Exact(_) => {
                let base = match self.pow_integer(p)? {
                    Scalar::Exact(b) => b,
                    Scalar::Float(_) => unreachable!(),
                };
                let numer = exact_nth_root(base.numer(), q as u32)?;
                let denom = exact_nth_root(base.denom(), q as u32)?;
                Ok(Scalar::Exact(BigRational::new(numer, denom)))
            }
        }
    }

    pub fn sqrt(&self) -> Result<Scalar> {
        self.pow_rational(Rational64::new(1, 2))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => big_rational_to_f64(r),
            Scalar::Float(v) => *v,
        }
    }

    pub fn floor_i128(&self) -> Result<i128> {
        match self {
            Scalar::Exact(r) => r
                .floor()
                .to_integer()
                .to_i128()
                .ok_or(Error::WitnessOverflow),
            Scalar::Float(v) => {
                let fl = v.floor();
                if fl.is_finite() && fl.abs() < i128::MAX as f64 {
                    Ok(fl as i128)
                } else {
                    Err(Error::WitnessOverflow)
                }
            }
        }
    }

    /// Parses a literal: integer, `p/q` ratio, or decimal with optional
    /// exponent (`1.5e-3`). Exact mode converts decimals exactly.
    pub fn parse(input: &str, mode: ScalarMode) -> Result<Scalar> {
        let s = input.trim();
        if s.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty scalar literal".into(),
            });
        }
        if let Some(idx) = s.find('/') {
            let numer = parse_decimal(&s[..idx], mode)?;
            let denom = parse_decimal(&s[idx + 1..], mode)?;
            return numer.div(&denom);
        }
        parse_decimal(s, mode)
    }
}

fn parse_decimal(input: &str, mode: ScalarMode) -> Result<Scalar> {
    let s = input.trim();
    let bad = |msg: &str| Error::Parse {
        position: 0,
        message: format!("{msg}: `{s}`"),
    };
    match mode {
        ScalarMode::Float => s
            .parse::<f64>()
            .map(Scalar::Float)
            .map_err(|_| bad("invalid numeric literal")),
        ScalarMode::Exact => {
            let (sign, body) = match s.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, s.strip_prefix('+').unwrap_or(s)),
            };
            let (mantissa, exp10) = match body.find(['e', 'E']) {
                Some(idx) => {
                    let e: i64 = body[idx + 1..]
                        .parse()
                        .map_err(|_| bad("invalid exponent"))?;
                    (&body[..idx], e)
                }
                None => (body, 0),
            };
            let (int_part, frac_part) = match mantissa.find('.') {
                Some(idx) => (&mantissa[..idx], &mantissa[idx + 1..]),
                None => (mantissa, ""),
            };
            if int_part.is_empty() && frac_part.is_empty() {
                return Err(bad("invalid numeric literal"));
            }
            let digits: String = format!("{int_part}{frac_part}");
            if !digits.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad("invalid numeric literal"));
            }
            let numer: BigInt = digits.parse().map_err(|_| bad("invalid digits"))?;
            let shift = exp10 - frac_part.len() as i64;
            let ten = BigInt::from(10);
            let mut value = BigRational::from_integer(numer * BigInt::from(sign));
            if shift >= 0 {
                value *= BigRational::from_integer(ten.pow(shift as u32));
            } else {
                value /= BigRational::from_integer(ten.pow((-shift) as u32));
            }
            Ok(Scalar::Exact(value))
        }
    }
}

fn exact_nth_root(value: &BigInt, q: u32) -> Result<BigInt> {
    let root = value.nth_root(q);
    if num_traits::pow::pow(root.clone(), q as usize) == *value {
        Ok(root)
    } else {
        Err(Error::NotExactlyRepresentable(format!(
            "{value}^(1/{q})"
        )))
    }
}

fn big_rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}
