//! Euler's two comparison modes, the cancellation of infinitesimals in
//! ratios, and desk-scale reproductions of the Introductio derivations:
//! sine/sinh as infinite products, the exponential as an infinite power,
//! the real quadratic factorization of `a^j - b^j`, the small-angle cosine
//! replacement with its remainder bound, and the inverse-square sum.

use std::f64::consts::PI;

use crate::context::ScalarMode;
use crate::error::{Error, Result};
use crate::number::LCNumber;
use crate::scalar::Scalar;

/// Exact-mode size caps: beyond these the rationals grow without insight.
const EXACT_BASEL_LIMIT: u64 = 5_000;
const EXACT_SURROGATE_LIMIT: u64 = 10_000;

/// Arithmetic comparison: equal when the difference is infinitesimal or
/// zero. Coincides with adequality; kept as a named mode because it treats
/// every infinitesimal as equal to zero.
pub fn arithmetic_equal(a: &LCNumber, b: &LCNumber) -> Result<bool> {
    a.adequal(b)
}

/// Geometric comparison: equal when the ratio is infinitely close to one.
/// Distinguishes infinitesimals of different scale where the arithmetic mode
/// does not (`eps` vs `2 eps`), and is undefined at zero.
pub fn geometric_equal(a: &LCNumber, b: &LCNumber) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::GeometricZero);
    }
    let one = LCNumber::one(*a.context());
    a.div(b)?.adequal(&one)
}

/// Ratio of two quantities together with the value it is assigned: its
/// standard part. Rejects ratios whose orders do not compare.
pub fn cancellation_ratio(num: &LCNumber, den: &LCNumber) -> Result<(LCNumber, Scalar)> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ratio = num.div(den)?;
    if !ratio.is_limited() {
        return Err(Error::RatioInfinite);
    }
    let standard = ratio.st()?;
    Ok((ratio, standard))
}

/// One run of a truncated sine/sinh product against the library reference.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductRunResult {
    pub x: f64,
    pub factor_count: u64,
    pub value: f64,
    pub reference: f64,
    pub abs_error: f64,
    /// First-order bound on the neglected tail, `|reference| x^2 / (pi^2 K)`
    /// (unscaled when the reference vanishes).
    pub tail_bound: f64,
}

/// `x * prod_{k=1..K} (1 - x^2 / (k^2 pi^2))`, the truncated product for
/// the sine.
pub fn sine_product(x: f64, factors: u64) -> Result<ProductRunResult> {
    truncated_product(x, factors, -1.0, x.sin())
}

/// `x * prod_{k=1..K} (1 + x^2 / (k^2 pi^2))`, the truncated product for
/// the hyperbolic sine.
pub fn sinh_product(x: f64, factors: u64) -> Result<ProductRunResult> {
    truncated_product(x, factors, 1.0, x.sinh())
}

fn truncated_product(x: f64, factors: u64, sign: f64, reference: f64) -> Result<ProductRunResult> {
    if factors == 0 {
        return Err(Error::Domain("factor count must be at least 1".into()));
    }
    let x_sq = x * x;
    let mut product = 1.0f64;
    for k in 1..=factors {
        let k_f = k as f64;
        product *= 1.0 + sign * x_sq / (k_f * k_f * PI * PI);
    }
    let value = x * product;
    let raw_tail = x_sq / (PI * PI * factors as f64);
    let tail_bound = if reference == 0.0 {
        raw_tail
    } else {
        reference.abs() * raw_tail
    };
    Ok(ProductRunResult {
        x,
        factor_count: factors,
        value,
        reference,
        abs_error: (value - reference).abs(),
        tail_bound,
    })
}

/// `(1 + x/j)^j` by binary exponentiation: the finite stand-in for the
/// exponential's infinite power, with error on the order of `x^2 e^x / j`.
pub fn exp_surrogate(x: &Scalar, j: u64) -> Result<Scalar> {
    surrogate_power(x, j, false)
}

/// `((1 + x/j)^j - (1 - x/j)^j) / 2`, the matching stand-in for sinh.
pub fn sinh_surrogate(x: &Scalar, j: u64) -> Result<Scalar> {
    surrogate_power(x, j, true)
}

fn surrogate_power(x: &Scalar, j: u64, hyperbolic: bool) -> Result<Scalar> {
    if j == 0 {
        return Err(Error::Domain("j must be at least 1".into()));
    }
    let mode = x.mode();
    if mode == ScalarMode::Exact && j > EXACT_SURROGATE_LIMIT {
        return Err(Error::ExactSizeCap {
            limit: EXACT_SURROGATE_LIMIT,
        });
    }
    let j_scalar = Scalar::from_integer(j as i64, mode);
    let step = x.div(&j_scalar)?;
    let one = Scalar::one(mode);
    // |x| < j keeps both bases positive.
    if one.sub(&step.abs()).sign() != crate::scalar::Sign3::Positive {
        return Err(Error::SurrogateBaseNonPositive);
    }
    let grown = one.add(&step).pow_integer(j as i64)?;
    if !hyperbolic {
        return Ok(grown);
    }
    let shrunk = one.sub(&step).pow_integer(j as i64)?;
    grown
        .sub(&shrunk)
        .div(&Scalar::from_integer(2, mode))
}

/// Relative residual of the real factorization
/// `a^j - b^j = (a - b) [* (a + b) when j is even] * prod_k (a^2 + b^2 - 2ab cos(2k pi/j))`,
/// with `k` running over the conjugate root pairs.
pub fn factor_identity_residual(j: u64, a: f64, b: f64) -> Result<f64> {
    if !(2..=64).contains(&j) {
        return Err(Error::FactorCountOutOfRange(j));
    }
    let lhs = a.powi(j as i32) - b.powi(j as i32);
    let mut rhs = a - b;
    if j % 2 == 0 {
        rhs *= a + b;
    }
    let pairs = if j % 2 == 0 { j / 2 - 1 } else { (j - 1) / 2 };
    for k in 1..=pairs {
        let angle = 2.0 * k as f64 * PI / j as f64;
        rhs *= a * a + b * b - 2.0 * a * b * angle.cos();
    }
    Ok((lhs - rhs).abs() / f64::max(1.0, lhs.abs()))
}

/// Residual of replacing `cos theta` by `1 - theta^2/2`, with the quartic
/// remainder bound `theta^4 / 24` it stays under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosReplacement {
    pub residual: f64,
    pub bound: f64,
}

impl CosReplacement {
    pub fn within_bound(&self) -> bool {
        self.residual <= self.bound
    }
}

pub fn cos_replacement_residual(theta: f64) -> CosReplacement {
    let residual = (theta.cos() - (1.0 - theta * theta / 2.0)).abs();
    let bound = theta.powi(4) / 24.0;
    CosReplacement { residual, bound }
}

/// Partial inverse-square sum against its limit `pi^2/6`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselResult {
    pub sum: Scalar,
    /// `pi^2/6`; irrational, so reported as a float in either mode.
    pub target: f64,
    pub error: f64,
}

/// `sum_{k<=n} 1/k^2`. Float mode uses compensated summation so the `1/n`
/// tail stays measurable at n = 10^6; exact mode sums rationals outright
/// and is capped, since the denominator grows like lcm(1..n)^2.
pub fn basel_partial(n: u64, mode: ScalarMode) -> Result<BaselResult> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let sum = match mode {
        ScalarMode::Exact => {
            if n > EXACT_BASEL_LIMIT {
                return Err(Error::ExactSizeCap {
                    limit: EXACT_BASEL_LIMIT,
                });
            }
            let mut acc = Scalar::zero(mode);
            for k in 1..=n as i64 {
                acc = acc.add(&Scalar::from_ratio(1, k * k, mode)?);
            }
            acc
        }
        ScalarMode::Float => {
            let mut sum = 0.0f64;
            let mut compensation = 0.0f64;
            for k in 1..=n {
                let term = 1.0 / (k as f64 * k as f64);
                let y = term - compensation;
                let t = sum + y;
                compensation = (t - sum) - y;
                sum = t;
            }
            Scalar::from_f64(sum)
        }
    };
    let target = PI * PI / 6.0;
    let error = target - sum.to_f64();
    Ok(BaselResult { sum, target, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;

    fn ctx() -> Context {
        Context::default()
    }

    fn eps() -> LCNumber {
        LCNumber::epsilon(ctx())
    }

    fn int(n: i64) -> LCNumber {
        LCNumber::from_integer(n, ctx())
    }

    #[test]
    fn the_two_equality_modes_diverge_on_infinitesimals() {
        let a = int(6);
        let a_shifted = a.add(&eps().scale(&Scalar::from_integer(3, ScalarMode::Exact))).unwrap();
        assert!(arithmetic_equal(&a_shifted, &a).unwrap());
        assert!(geometric_equal(&a_shifted, &a).unwrap());

        let two_eps = eps().scale(&Scalar::from_integer(2, ScalarMode::Exact));
        assert!(arithmetic_equal(&eps(), &two_eps).unwrap());
        assert!(!geometric_equal(&eps(), &two_eps).unwrap());

        assert!(!arithmetic_equal(&int(1), &int(2)).unwrap());
        assert_eq!(
            geometric_equal(&int(1), &LCNumber::zero(ctx())).unwrap_err(),
            Error::GeometricZero
        );
    }

    #[test]
    fn lower_order_terms_vanish_geometrically() {
        // a*eps^m + b*eps^n with m < n is geometrically equal to a*eps^m.
        let lead = eps().pow_integer(2).unwrap().scale(&Scalar::from_integer(5, ScalarMode::Exact));
        let tail = eps().pow_integer(5).unwrap().scale(&Scalar::from_integer(-7, ScalarMode::Exact));
        let full = lead.add(&tail).unwrap();
        assert!(geometric_equal(&full, &lead).unwrap());
        assert!(arithmetic_equal(&full, &lead).unwrap());
    }

    #[test]
    fn cancellation_examples() {
        let num = eps().add(&eps().pow_integer(2).unwrap()).unwrap();
        let (ratio, standard) = cancellation_ratio(&num, &eps()).unwrap();
        assert_eq!(ratio.to_string(), "1 + eps");
        assert_eq!(standard, Scalar::from_integer(1, ScalarMode::Exact));

        let a_eps = eps().scale(&Scalar::from_integer(5, ScalarMode::Exact));
        let (ratio, standard) = cancellation_ratio(&a_eps, &eps()).unwrap();
        assert_eq!(ratio, int(5));
        assert_eq!(standard, Scalar::from_integer(5, ScalarMode::Exact));

        let (ratio, standard) = cancellation_ratio(&eps().pow_integer(2).unwrap(), &eps()).unwrap();
        assert_eq!(ratio, eps());
        assert!(standard.is_zero());

        assert_eq!(
            cancellation_ratio(&eps(), &eps().pow_integer(2).unwrap()).unwrap_err(),
            Error::RatioInfinite
        );
        assert_eq!(
            cancellation_ratio(&eps(), &LCNumber::zero(ctx())).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn sine_product_vanishes_at_pi() {
        let run = sine_product(PI, 4).unwrap();
        // The k = 1 factor is zero at x = pi.
        assert_eq!(run.value, 0.0);
        assert!(run.abs_error < 1e-15);
    }

    #[test]
    fn sine_product_converges_at_one() {
        let run = sine_product(1.0, 100_000).unwrap();
        assert!(run.abs_error < 1e-4);
        assert!(run.abs_error <= 100.0 * run.tail_bound);
        let coarse = sine_product(1.0, 1_000).unwrap();
        assert!(run.abs_error < coarse.abs_error);
    }

    #[test]
    fn sinh_product_converges() {
        let run = sinh_product(1.0, 100_000).unwrap();
        assert!(run.abs_error < 1e-4);
        assert_eq!(sine_product(1.0, 0).unwrap_err(), Error::Domain("factor count must be at least 1".into()));
    }

    #[test]
    fn wallis_structure_at_half_pi() {
        let run = sine_product(PI / 2.0, 100_000).unwrap();
        assert!((run.reference - 1.0).abs() < 1e-15);
        assert!(run.abs_error < 1e-4);
    }

    #[test]
    fn surrogate_powers() {
        let one = Scalar::from_f64(1.0);
        assert_eq!(
            exp_surrogate(&Scalar::from_f64(0.0), 17).unwrap(),
            Scalar::from_f64(1.0)
        );
        let e = exp_surrogate(&one, 1_000_000).unwrap();
        assert!((e.to_f64() - std::f64::consts::E).abs() < 2e-6);
        let sh = sinh_surrogate(&one, 1_000_000).unwrap();
        assert!((sh.to_f64() - 1.0f64.sinh()).abs() < 2e-6);

        // Exact mode stays exact for modest j.
        let exact_run = exp_surrogate(&Scalar::from_integer(1, ScalarMode::Exact), 4).unwrap();
        assert_eq!(
            exact_run,
            Scalar::from_ratio(625, 256, ScalarMode::Exact).unwrap()
        );

        assert_eq!(
            exp_surrogate(&Scalar::from_f64(5.0), 4).unwrap_err(),
            Error::SurrogateBaseNonPositive
        );
        assert_eq!(
            exp_surrogate(&Scalar::from_integer(1, ScalarMode::Exact), 1_000_000).unwrap_err(),
            Error::ExactSizeCap { limit: 10_000 }
        );
    }

    #[test]
    fn factor_identity_small_cases() {
        // j = 2: a^2 - b^2 = (a - b)(a + b).
        assert!(factor_identity_residual(2, 1.7, -0.3).unwrap() <= 1e-12);
        // j = 3 at (2, 1): 7 = 1 * (4 + 1 + 2).
        assert!(factor_identity_residual(3, 2.0, 1.0).unwrap() <= 1e-12);
        assert_eq!(
            factor_identity_residual(1, 1.0, 1.0).unwrap_err(),
            Error::FactorCountOutOfRange(1)
        );
        assert_eq!(
            factor_identity_residual(65, 1.0, 1.0).unwrap_err(),
            Error::FactorCountOutOfRange(65)
        );
    }

    #[test]
    fn cos_replacement_examples() {
        let zero = cos_replacement_residual(0.0);
        assert_eq!((zero.residual, zero.bound), (0.0, 0.0));

        let small = cos_replacement_residual(0.1);
        assert!(small.within_bound());
        assert!((small.bound - 0.1f64.powi(4) / 24.0).abs() < 1e-20);

        let unit = cos_replacement_residual(1.0);
        assert!(unit.within_bound());
        assert!((unit.residual - 0.040302305868139766).abs() < 1e-15);
    }

    #[test]
    fn basel_exact_small_case() {
        let run = basel_partial(10, ScalarMode::Exact).unwrap();
        assert_eq!(
            run.sum,
            Scalar::from_ratio(1_968_329, 1_270_080, ScalarMode::Exact).unwrap()
        );

        let first = basel_partial(1, ScalarMode::Exact).unwrap();
        assert!(first.sum.is_one());
        assert!((first.error - 0.6449).abs() < 1e-3);

        assert_eq!(
            basel_partial(1_000_000, ScalarMode::Exact).unwrap_err(),
            Error::ExactSizeCap { limit: 5_000 }
        );
    }

    #[test]
    fn basel_float_tail() {
        let run = basel_partial(1_000_000, ScalarMode::Float).unwrap();
        assert!(run.error > 0.99e-6 && run.error < 1.01e-6);
    }
}
