use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::scalar::{Scalar, Sign3};

/// Size class of a series element.
///
/// `Infinitesimal` means the least exponent is positive, `Appreciable` that
/// it is zero, `Infinite` that it is negative; zero is its own class since it
/// has no least exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Zero,
    Infinitesimal,
    Appreciable,
    Infinite,
}

impl Classification {
    /// Limited means not infinite; only limited elements have a standard part.
    pub fn is_limited(&self) -> bool {
        !matches!(self, Classification::Infinite)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Zero => write!(f, "zero"),
            Classification::Infinitesimal => write!(f, "infinitesimal"),
            Classification::Appreciable => write!(f, "appreciable"),
            Classification::Infinite => write!(f, "infinite"),
        }
    }
}

/// Leading-monomial factorization `lead * eps^order * (1 + residue)` of a
/// nonzero element, with `residue` infinitesimal or zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    pub order: Exponent,
    pub lead: Scalar,
    pub residue: LCNumber,
}

/// A finite-support formal series in the base infinitesimal `eps` with
/// rational exponents and strictly increasing term order.
///
/// Invariants: every stored coefficient is nonzero, the empty term list
/// represents zero, and all exponents lie in the window
/// `[lambda, lambda + D)` where `lambda` is the least exponent and `D` the
/// context depth. Values are immutable once built; the `truncated` flag
/// records whether any operation along the way discarded terms beyond the
/// window (or summed an inherently infinite series), so `!truncated` means
/// the value is exact.
#[derive(Debug, Clone)]
pub struct LCNumber {
    terms: Vec<(Exponent, Scalar)>,
    ctx: Context,
    truncated: bool,
}

impl PartialEq for LCNumber {
    /// Structural equality of value: same arithmetic policy and identical
    /// term lists. The truncation flag is provenance, not value.
    fn eq(&self, other: &Self) -> bool {
        self.ctx.depth() == other.ctx.depth()
            && self.ctx.mode() == other.ctx.mode()
            && self.terms == other.terms
    }
}

impl LCNumber {
    pub fn zero(ctx: Context) -> Self {
        LCNumber {
            terms: Vec::new(),
            ctx,
            truncated: false,
        }
    }

    pub fn one(ctx: Context) -> Self {
        Self::monomial_unchecked(Exponent::zero(), Scalar::one(ctx.mode()), ctx)
    }

    /// The base infinitesimal: the term `(1, 1)`.
    pub fn epsilon(ctx: Context) -> Self {
        Self::monomial_unchecked(Exponent::integer(1), Scalar::one(ctx.mode()), ctx)
    }

    /// The base infinite element `eps^-1`.
    pub fn infinite(ctx: Context) -> Self {
        Self::monomial_unchecked(Exponent::integer(-1), Scalar::one(ctx.mode()), ctx)
    }

    pub fn from_integer(n: i64, ctx: Context) -> Self {
        Self::monomial_unchecked(Exponent::zero(), Scalar::from_integer(n, ctx.mode()), ctx)
    }

    pub fn from_scalar(value: Scalar, ctx: Context) -> Result<Self> {
        if value.mode() != ctx.mode() {
            return Err(Error::ModeMismatch);
        }
        Ok(Self::monomial_unchecked(Exponent::zero(), value, ctx))
    }

    pub fn monomial(exponent: Exponent, coefficient: Scalar, ctx: Context) -> Result<Self> {
        if coefficient.mode() != ctx.mode() {
            return Err(Error::ModeMismatch);
        }
        Ok(Self::monomial_unchecked(exponent, coefficient, ctx))
    }

    fn monomial_unchecked(exponent: Exponent, coefficient: Scalar, ctx: Context) -> Self {
        if coefficient.is_zero() {
            return Self::zero(ctx);
        }
        LCNumber {
            terms: vec![(exponent, coefficient)],
            ctx,
            truncated: false,
        }
    }

    /// Merges equal exponents, drops zero coefficients, sorts, and applies
    /// the depth window relative to the least surviving exponent.
    pub fn normalize(raw: Vec<(Exponent, Scalar)>, ctx: Context) -> Result<Self> {
        for (_, c) in &raw {
            if c.mode() != ctx.mode() {
                return Err(Error::ModeMismatch);
            }
        }
        Ok(Self::normalize_raw(raw, ctx, false))
    }

    fn normalize_raw(mut raw: Vec<(Exponent, Scalar)>, ctx: Context, carried: bool) -> Self {
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Exponent, Scalar)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match merged.last_mut() {
                Some((last_e, last_c)) if *last_e == e => {
                    *last_c = last_c.add(&c);
                }
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        if merged.is_empty() {
            return LCNumber {
                terms: merged,
                ctx,
                truncated: carried,
            };
        }
        let least = merged[0].0;
        let cutoff = least + Exponent::integer(ctx.depth() as i64);
        let before = merged.len();
        merged.retain(|(e, _)| *e < cutoff);
        let dropped = merged.len() != before;
        LCNumber {
            terms: merged,
            ctx,
            truncated: carried || dropped,
        }
    }

    pub fn terms(&self) -> &[(Exponent, Scalar)] {
        &self.terms
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub(crate) fn mark_truncated(&mut self, truncated: bool) {
        self.truncated = truncated;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn least_exponent(&self) -> Option<Exponent> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient at a given exponent; zero when absent.
    pub fn coefficient(&self, exponent: Exponent) -> Scalar {
        match self.terms.binary_search_by(|(e, _)| e.cmp(&exponent)) {
            Ok(idx) => self.terms[idx].1.clone(),
            Err(_) => Scalar::zero(self.ctx.mode()),
        }
    }

    /// Some(scalar) when the value is a pure real (zero or a single term at
    /// exponent zero).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero(self.ctx.mode())),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    fn check_ctx(&self, rhs: &Self) -> Result<()> {
        if self.ctx.depth() == rhs.ctx.depth() && self.ctx.mode() == rhs.ctx.mode() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        let mut raw = self.terms.clone();
        raw.extend(rhs.terms.iter().cloned());
        Ok(Self::normalize_raw(
            raw,
            self.ctx,
            self.truncated || rhs.truncated,
        ))
    }

    pub fn neg(&self) -> Self {
        LCNumber {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            ctx: self.ctx,
            truncated: self.truncated,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        let carried = self.truncated || rhs.truncated;
        if self.is_zero() || rhs.is_zero() {
            let mut z = Self::zero(self.ctx);
            z.truncated = carried;
            return Ok(z);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                raw.push((*e1 + *e2, c1.mul(c2)));
            }
        }
        Ok(Self::normalize_raw(raw, self.ctx, carried))
    }

    /// Multiplies every coefficient by a scalar; exact, no re-windowing.
    pub fn scale(&self, factor: &Scalar) -> Self {
        if factor.is_zero() {
            let mut z = Self::zero(self.ctx);
            z.truncated = self.truncated;
            return z;
        }
        let mut terms: Vec<(Exponent, Scalar)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.mul(factor)))
            .collect();
        // Float products may underflow to zero.
        terms.retain(|(_, c)| !c.is_zero());
        LCNumber {
            terms,
            ctx: self.ctx,
            truncated: self.truncated,
        }
    }

    /// Multiplies by the exact monomial `eps^delta`.
    pub fn shift(&self, delta: Exponent) -> Self {
        LCNumber {
            terms: self.terms.iter().map(|(e, c)| (*e + delta, c.clone())).collect(),
            ctx: self.ctx,
            truncated: self.truncated,
        }
    }

    /// Writes `x = lead * eps^order * (1 + u)` and returns
    /// `lead^r * eps^(order*r) * (1 + u)^r` with the binomial series for the
    /// last factor summed out to the depth window. Positive integer powers
    /// are computed by exact repeated multiplication instead.
    pub fn pow_rational(&self, r: Rational64) -> Result<Self> {
        if r.is_zero() {
            return Ok(Self::one(self.ctx));
        }
        if self.is_zero() {
            return if r > Rational64::zero() {
                Ok(Self::zero(self.ctx))
            } else {
                Err(Error::DivisionByZero)
            };
        }
        if r.is_integer() && r > Rational64::zero() {
            return self.pow_positive_integer(*r.numer() as u64);
        }
        let parts = self.decompose()?;
        if !r.is_integer() && parts.lead.sign() == Sign3::Negative {
            return Err(Error::FractionalPowerOfNegative);
        }
        let new_lead = parts.lead.pow_rational(r)?;
        let new_order = parts.order.scale(r);
        let series = Self::binomial_series(&parts.residue, r, self.ctx);
        let mono = Self::monomial_unchecked(new_order, new_lead, self.ctx);
        let mut out = mono.mul(&series)?;
        out.truncated = out.truncated || self.truncated;
        Ok(out)
    }

    pub fn pow_integer(&self, n: i64) -> Result<Self> {
        self.pow_rational(Rational64::from_integer(n))
    }

    fn pow_positive_integer(&self, n: u64) -> Result<Self> {
        let mut acc = Self::one(self.ctx);
        let mut sq = self.clone();
        let mut exp = n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `(1 + u)^alpha` for infinitesimal-or-zero `u`. Terminates because the
    /// least exponent of `u^m` grows linearly in `m`; the result is exact
    /// only when the series itself terminates (alpha a nonnegative integer).
    fn binomial_series(u: &Self, alpha: Rational64, ctx: Context) -> Self {
        if u.is_zero() {
            let mut one = Self::one(ctx);
            one.truncated = u.truncated;
            return one;
        }
        let lambda = u
            .least_exponent()
            .expect("nonzero series has a least exponent")
            .as_rational();
        debug_assert!(lambda > Rational64::zero(), "residue must be infinitesimal");
        let depth = Rational64::from_integer(ctx.depth() as i64);
        let mut acc = Self::one(ctx);
        let mut power = Self::one(ctx);
        let mut coef = Scalar::one(ctx.mode());
        let mut hit_window = false;
        let mut m: i64 = 1;
        loop {
            // binom(alpha, m) = binom(alpha, m-1) * (alpha - m + 1) / m
            let step = (alpha - Rational64::from_integer(m - 1)) / Rational64::from_integer(m);
            coef = coef.mul(&Scalar::from_rational64(step, ctx.mode()));
            if coef.is_zero() {
                break;
            }
            power = match power.mul(u) {
                Ok(p) => p,
                Err(_) => unreachable!("same context by construction"),
            };
            let term = power.scale(&coef);
            acc = match acc.add(&term) {
                Ok(a) => a,
                Err(_) => unreachable!("same context by construction"),
            };
            if lambda * Rational64::from_integer(m + 1) >= depth {
                hit_window = true;
                break;
            }
            m += 1;
            if m > 4096 {
                hit_window = true;
                break;
            }
        }
        acc.truncated = acc.truncated || u.truncated || hit_window;
        acc
    }

    /// Multiplicative inverse via the geometric series on the residue of the
    /// leading-monomial factorization. Exact for monomials; otherwise an
    /// order-D truncation with error of order at least
    /// `least_exponent(x^-1) + D`.
    pub fn inverse(&self) -> Result<Self> {
        self.pow_rational(Rational64::from_integer(-1))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.check_ctx(rhs)?;
        self.mul(&rhs.inverse()?)
    }

    /// Sign of `self - rhs`: the total order of the field, decided by the
    /// leading coefficient of the difference.
    pub fn compare(&self, rhs: &Self) -> Result<Sign3> {
        let diff = self.sub(rhs)?;
        Ok(diff
            .leading_coefficient()
            .map_or(Sign3::Zero, |c| c.sign()))
    }

    pub fn sign(&self) -> Sign3 {
        self.leading_coefficient().map_or(Sign3::Zero, |c| c.sign())
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign3::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign3::Negative
    }

    pub fn classify(&self) -> Classification {
        match self.least_exponent() {
            None => Classification::Zero,
            Some(e) if e.is_positive() => Classification::Infinitesimal,
            Some(e) if e.is_zero() => Classification::Appreciable,
            Some(_) => Classification::Infinite,
        }
    }

    pub fn is_limited(&self) -> bool {
        self.classify().is_limited()
    }

    /// Standard part: the unique real infinitely close to a limited element,
    /// i.e. the coefficient at exponent zero. A ring homomorphism on limited
    /// elements; undefined on infinite ones.
    pub fn st(&self) -> Result<Scalar> {
        if !self.is_limited() {
            return Err(Error::StandardPartUndefined);
        }
        Ok(self.coefficient(Exponent::zero()))
    }

    /// True when `self - rhs` is infinitesimal or zero: equality up to a
    /// negligible term.
    pub fn adequal(&self, rhs: &Self) -> Result<bool> {
        let diff = self.sub(rhs)?;
        Ok(matches!(
            diff.classify(),
            Classification::Zero | Classification::Infinitesimal
        ))
    }

    /// Keeps only the terms of the lowest order of smallness: all terms
    /// sharing the least exponent (a single monomial once normalized).
    /// Discards the rest without setting anything to zero; zero maps to zero.
    pub fn truncate_tlh(&self) -> Self {
        match self.terms.first() {
            None => {
                let mut z = Self::zero(self.ctx);
                z.truncated = self.truncated;
                z
            }
            Some((e, c)) => {
                let mut m = Self::monomial_unchecked(*e, c.clone(), self.ctx);
                m.truncated = self.truncated;
                m
            }
        }
    }

    /// Factors a nonzero element as `lead * eps^order * (1 + residue)` with
    /// `residue` infinitesimal or zero; the factorization is exact and
    /// recomposes to the input within the window.
    pub fn decompose(&self) -> Result<DecompositionResult> {
        let (order, lead) = match self.terms.first() {
            None => return Err(Error::DecomposeZero),
            Some((e, c)) => (*e, c.clone()),
        };
        let mut residue_terms = Vec::with_capacity(self.terms.len().saturating_sub(1));
        for (e, c) in &self.terms[1..] {
            let coeff = c.div(&lead).expect("leading coefficient is nonzero");
            residue_terms.push((*e - order, coeff));
        }
        let residue = LCNumber {
            terms: residue_terms,
            ctx: self.ctx,
            truncated: self.truncated,
        };
        Ok(DecompositionResult {
            order,
            lead,
            residue,
        })
    }
}

impl fmt::Display for LCNumber {
    /// Renders in the literal grammar, exponents ascending:
    /// `3 + 2*eps - 5*eps^(3/2)`, `eps^-1`. Exact coefficients print as
    /// `p/q`; parsing the output back in the same context is lossless.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.sign() == Sign3::Negative;
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e.as_rational() == Rational64::one() {
                write!(f, "eps")?;
            } else if e.is_integer() {
                write!(f, "eps^{}", e.numer())?;
            } else {
                write!(f, "eps^({})", e)?;
            }
        }
        Ok(())
    }
}
