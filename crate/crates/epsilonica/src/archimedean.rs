//! Decision procedures for multiple-exceeding and proportion: whether some
//! integer multiple of `a` passes `b`, the witness form used for comparing
//! differences, and cut-equality of two ratios.

use crate::error::{Error, Result};
use crate::number::{Classification, LCNumber};
use crate::scalar::{Scalar, Sign3};

/// Least `n` with `n*a > b`, if one exists. Requires `a > 0`.
///
/// The order decides immediately when the two sides have different leading
/// exponents; when they share one, a candidate comes from the standard part
/// of `b/a` and is verified exactly on a small neighborhood, avoiding any
/// floating ceiling.
pub fn exceeds(a: &LCNumber, b: &LCNumber) -> Result<Option<u64>> {
    if !a.is_positive() {
        return Err(Error::NonPositiveMultiplicand);
    }
    if b.sign() != Sign3::Positive {
        return Ok(Some(1));
    }
    let la = a.least_exponent().expect("positive value is nonzero");
    let lb = b.least_exponent().expect("positive value is nonzero");
    if la < lb {
        // `a` is of strictly larger order than the positive `b`.
        return Ok(Some(1));
    }
    if la > lb {
        // `a` is infinitely smaller than `b`: no multiple ever reaches it.
        return Ok(None);
    }
    let ratio = b.div(a)?;
    let candidate = ratio.st()?.floor_i128()? + 1;
    if candidate > i64::MAX as i128 - 2 {
        return Err(Error::WitnessOverflow);
    }
    let lo = candidate.saturating_sub(2).max(1);
    for n in lo..=candidate + 2 {
        let multiple = a.scale(&Scalar::from_integer(n as i64, a.context().mode()));
        if multiple.compare(b)? == Sign3::Positive {
            return Ok(Some(n as u64));
        }
    }
    unreachable!("candidate + 2 always exceeds the ratio");
}

/// Least `n` with `n*(b - a) > c`, or absent. Requires `a < b` and `c > 0`;
/// appreciable pairs always produce a witness, while an infinitesimal gap
/// `b - a` below an appreciable `c` never does.
pub fn archimedes_lemma_witness(
    a: &LCNumber,
    b: &LCNumber,
    c: &LCNumber,
) -> Result<Option<u64>> {
    if a.compare(b)? != Sign3::Negative || !c.is_positive() {
        return Err(Error::LemmaPrecondition);
    }
    exceeds(&b.sub(a)?, c)
}

/// Whether `A : B :: C : D` holds for positive magnitudes: no rational
/// separates the ratios `B/A` and `D/C`.
///
/// Both ratios unlimited means every rational sits below both, so the cuts
/// agree. Otherwise the cuts agree exactly when the standard parts coincide
/// and the infinitesimal residues point the same way.
pub fn hankel_proportion(
    a: &LCNumber,
    b: &LCNumber,
    c: &LCNumber,
    d: &LCNumber,
) -> Result<bool> {
    for m in [a, b, c, d] {
        if !m.is_positive() {
            return Err(Error::NonPositiveMagnitude);
        }
    }
    let x = b.div(a)?;
    let y = d.div(c)?;
    let x_infinite = x.classify() == Classification::Infinite;
    let y_infinite = y.classify() == Classification::Infinite;
    if x_infinite || y_infinite {
        return Ok(x_infinite && y_infinite);
    }
    let rx = x.st()?;
    let ry = y.st()?;
    if rx != ry {
        return Ok(false);
    }
    let x_res = x.sub(&LCNumber::from_scalar(rx, *x.context())?)?;
    let y_res = y.sub(&LCNumber::from_scalar(ry, *y.context())?)?;
    Ok(x_res.sign() == y_res.sign())
}
