//! Evaluation of expression trees at series arguments.
//!
//! Field operations delegate to the series arithmetic. An elementary function
//! at a limited argument `x = r + h` (`h` infinitesimal) becomes its Taylor
//! expansion around `r`, summed out to the depth window; square roots go
//! through the leading-monomial factorization instead, so they also accept
//! infinitesimal and infinite positive arguments. Other elementary functions
//! at unlimited arguments have no finite-support value and are rejected:
//! limits at infinity must be rearranged algebraically first.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_rational::Rational64;

use crate::context::{Context, ScalarMode};
use crate::error::{Error, Result};
use crate::expr::{ExprTree, Func};
use crate::number::LCNumber;
use crate::scalar::{Scalar, Sign3};

pub type Bindings = HashMap<String, LCNumber>;

/// One-variable binding, the common case.
pub fn single_binding(name: &str, value: LCNumber) -> Bindings {
    let mut map = HashMap::new();
    map.insert(name.to_string(), value);
    map
}

pub fn eval(expr: &ExprTree, bindings: &Bindings, ctx: Context) -> Result<LCNumber> {
    match expr {
        ExprTree::Variable(name) => match bindings.get(name) {
            Some(value) => {
                if value.context().depth() != ctx.depth()
                    || value.context().mode() != ctx.mode()
                {
                    return Err(Error::ContextMismatch);
                }
                Ok(value.clone())
            }
            None => Err(Error::UnboundVariable(name.clone())),
        },
        ExprTree::Literal(r) => {
            LCNumber::from_scalar(Scalar::from_big_rational(r.clone(), ctx.mode()), ctx)
        }
        ExprTree::Pi => match ctx.mode() {
            ScalarMode::Exact => Err(Error::PiRequiresFloatMode),
            ScalarMode::Float => LCNumber::from_scalar(Scalar::from_f64(PI), ctx),
        },
        ExprTree::Eps => Ok(LCNumber::epsilon(ctx)),
        ExprTree::Neg(inner) => Ok(eval(inner, bindings, ctx)?.neg()),
        ExprTree::Add(a, b) => eval(a, bindings, ctx)?.add(&eval(b, bindings, ctx)?),
        ExprTree::Sub(a, b) => eval(a, bindings, ctx)?.sub(&eval(b, bindings, ctx)?),
        ExprTree::Mul(a, b) => eval(a, bindings, ctx)?.mul(&eval(b, bindings, ctx)?),
        ExprTree::Div(a, b) => eval(a, bindings, ctx)?.div(&eval(b, bindings, ctx)?),
        ExprTree::Pow(base, r) => eval(base, bindings, ctx)?.pow_rational(*r),
        ExprTree::Apply(func, arg) => lift(*func, &eval(arg, bindings, ctx)?, ctx),
    }
}

/// Evaluates an expression with no free variables.
pub fn eval_constant(expr: &ExprTree, ctx: Context) -> Result<LCNumber> {
    eval(expr, &Bindings::new(), ctx)
}

/// Applies an elementary function to a series argument.
fn lift(func: Func, x: &LCNumber, ctx: Context) -> Result<LCNumber> {
    match func {
        Func::Step => {
            let value = if x.sign() == Sign3::Negative {
                LCNumber::zero(ctx)
            } else {
                LCNumber::one(ctx)
            };
            Ok(value)
        }
        Func::Sqrt => match x.pow_rational(Rational64::new(1, 2)) {
            Err(Error::FractionalPowerOfNegative) => {
                Err(Error::Domain("sqrt of a negative value".into()))
            }
            other => other,
        },
        _ => {
            if !x.is_limited() {
                return Err(Error::UnliftableAtInfiniteArgument { func: func.name() });
            }
            let at = x.st()?;
            if func == Func::Ln && at.sign() != Sign3::Positive {
                return Err(Error::Domain("ln of non-positive standard part".into()));
            }
            let h = x.sub(&LCNumber::from_scalar(at.clone(), ctx)?)?;
            let mut series = TaylorSeries::start(func, &at)?;
            let c0 = series.next_coefficient();
            let mut acc = LCNumber::from_scalar(c0.clone(), ctx)?;
            if h.is_zero() {
                acc.mark_truncated(x.is_truncated());
                return Ok(acc);
            }
            let lambda = h
                .least_exponent()
                .expect("nonzero infinitesimal has a least exponent")
                .as_rational();
            let depth = Rational64::from_integer(ctx.depth() as i64);
            let mut power = LCNumber::one(ctx);
            let mut floor = if c0.is_zero() {
                None
            } else {
                Some(Rational64::from_integer(0))
            };
            let mut m: i64 = 1;
            loop {
                power = power.mul(&h)?;
                let c = series.next_coefficient();
                if !c.is_zero() {
                    acc = acc.add(&power.scale(&c))?;
                    if floor.is_none() {
                        floor = Some(lambda * Rational64::from_integer(m));
                    }
                }
                if let Some(fl) = floor {
                    if lambda * Rational64::from_integer(m + 1) >= fl + depth {
                        break;
                    }
                }
                m += 1;
                if m > 4096 {
                    break;
                }
            }
            // The Taylor tail is dropped beyond the window.
            acc.mark_truncated(true);
            Ok(acc)
        }
    }
}

/// Exact coefficients `f^(m)(r) / m!` of the built-in function table.
///
/// In exact mode the expansion point must make every coefficient rational:
/// the origin for `exp`, `sin`, `cos`, `sinh`, `cosh`, `arctan`; one for
/// `ln`; a rational square for `sqrt`. Float mode expands anywhere in the
/// domain.
pub fn taylor_coefficients(func: Func, at: &Scalar, count: usize) -> Result<Vec<Scalar>> {
    let mut series = TaylorSeries::start(func, at)?;
    Ok((0..count).map(|_| series.next_coefficient()).collect())
}

enum TaylorSeries {
    /// exp: c_m = c_{m-1} / m.
    Exp { current: Scalar, m: i64 },
    /// sin/cos/sinh/cosh: derivative cycle over (s, c), divided by m!.
    Cycle {
        s: Scalar,
        c: Scalar,
        pattern: CyclePattern,
        factorial: Scalar,
        m: i64,
    },
    /// ln: c_0 = ln r, then (-1)^(m+1) / (m r^m).
    Ln { r: Scalar, r_pow: Scalar, m: i64 },
    /// arctan: (1 + r^2) (m+1) a_{m+1} + 2 r m a_m + (m-1) a_{m-1} = 0.
    Arctan {
        r: Scalar,
        one_plus_r2: Scalar,
        prev: Scalar,
        current: Scalar,
        m: i64,
    },
    /// sqrt: c_m = c_{m-1} * (3 - 2m) / (2m r).
    Sqrt { r: Scalar, current: Scalar, m: i64 },
}

enum CyclePattern {
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl TaylorSeries {
    fn start(func: Func, at: &Scalar) -> Result<TaylorSeries> {
        let mode = at.mode();
        let exact = mode == ScalarMode::Exact;
        let not_exact = |what: &str| {
            Err(Error::NotExactlyRepresentable(format!(
                "{what} at {at}"
            )))
        };
        match func {
            Func::Exp => {
                let c0 = if at.is_zero() {
                    Scalar::one(mode)
                } else if exact {
                    return not_exact("exp");
                } else {
                    Scalar::from_f64(at.to_f64().exp())
                };
                Ok(TaylorSeries::Exp { current: c0, m: 0 })
            }
            Func::Sin | Func::Cos | Func::Sinh | Func::Cosh => {
                let (s, c) = if at.is_zero() {
                    (Scalar::zero(mode), Scalar::one(mode))
                } else if exact {
                    return not_exact(func.name());
                } else {
                    let r = at.to_f64();
                    match func {
                        Func::Sin | Func::Cos => {
                            (Scalar::from_f64(r.sin()), Scalar::from_f64(r.cos()))
                        }
                        _ => (Scalar::from_f64(r.sinh()), Scalar::from_f64(r.cosh())),
                    }
                };
                let pattern = match func {
                    Func::Sin => CyclePattern::Sin,
                    Func::Cos => CyclePattern::Cos,
                    Func::Sinh => CyclePattern::Sinh,
                    _ => CyclePattern::Cosh,
                };
                Ok(TaylorSeries::Cycle {
                    s,
                    c,
                    pattern,
                    factorial: Scalar::one(mode),
                    m: 0,
                })
            }
            Func::Ln => {
                if at.sign() != Sign3::Positive {
                    return Err(Error::Domain("ln of non-positive value".into()));
                }
                let c0 = if at.is_one() {
                    Scalar::zero(mode)
                } else if exact {
                    return not_exact("ln");
                } else {
                    Scalar::from_f64(at.to_f64().ln())
                };
                // c0 is threaded through `r_pow` starting at m = 0.
                Ok(TaylorSeries::Ln {
                    r: at.clone(),
                    r_pow: c0,
                    m: 0,
                })
            }
            Func::Arctan => {
                let c0 = if at.is_zero() {
                    Scalar::zero(mode)
                } else if exact {
                    return not_exact("arctan");
                } else {
                    Scalar::from_f64(at.to_f64().atan())
                };
                let one_plus_r2 = Scalar::one(mode).add(&at.mul(at));
                Ok(TaylorSeries::Arctan {
                    r: at.clone(),
                    one_plus_r2,
                    prev: Scalar::zero(mode),
                    current: c0,
                    m: 0,
                })
            }
            Func::Sqrt => {
                if at.sign() != Sign3::Positive {
                    return Err(Error::Domain(
                        "sqrt has no expansion at a non-positive point".into(),
                    ));
                }
                let c0 = at.sqrt()?;
                Ok(TaylorSeries::Sqrt {
                    r: at.clone(),
                    current: c0,
                    m: 0,
                })
            }
            Func::Step => Err(Error::Domain("step has no Taylor expansion".into())),
        }
    }

    fn next_coefficient(&mut self) -> Scalar {
        match self {
            TaylorSeries::Exp { current, m } => {
                if *m > 0 {
                    *current = current
                        .div(&Scalar::from_integer(*m, current.mode()))
                        .expect("m > 0");
                }
                *m += 1;
                current.clone()
            }
            TaylorSeries::Cycle {
                s,
                c,
                pattern,
                factorial,
                m,
            } => {
                let mode = s.mode();
                if *m > 0 {
                    *factorial = factorial.mul(&Scalar::from_integer(*m, mode));
                }
                let derivative = match pattern {
                    CyclePattern::Sin => match *m % 4 {
                        0 => s.clone(),
                        1 => c.clone(),
                        2 => s.neg(),
                        _ => c.neg(),
                    },
                    CyclePattern::Cos => match *m % 4 {
                        0 => c.clone(),
                        1 => s.neg(),
                        2 => c.neg(),
                        _ => s.clone(),
                    },
                    CyclePattern::Sinh => {
                        if *m % 2 == 0 {
                            s.clone()
                        } else {
                            c.clone()
                        }
                    }
                    CyclePattern::Cosh => {
                        if *m % 2 == 0 {
                            c.clone()
                        } else {
                            s.clone()
                        }
                    }
                };
                *m += 1;
                derivative.div(factorial).expect("factorial is nonzero")
            }
            TaylorSeries::Ln { r, r_pow, m } => {
                let mode = r.mode();
                let out = if *m == 0 {
                    let c0 = r_pow.clone();
                    *r_pow = Scalar::one(mode);
                    c0
                } else {
                    *r_pow = r_pow.mul(r);
                    let sign = if *m % 2 == 1 { 1 } else { -1 };
                    Scalar::from_integer(sign, mode)
                        .div(&Scalar::from_integer(*m, mode).mul(r_pow))
                        .expect("r > 0")
                };
                *m += 1;
                out
            }
            TaylorSeries::Arctan {
                r,
                one_plus_r2,
                prev,
                current,
                m,
            } => {
                let mode = r.mode();
                if *m == 0 {
                    *m = 1;
                    let a1 = Scalar::one(mode).div(one_plus_r2).expect("1 + r^2 > 0");
                    let c0 = current.clone();
                    *prev = c0.clone();
                    *current = a1;
                    return c0;
                }
                let k = *m; // producing a_k now; recurrence advances to a_{k+1}
                let out = current.clone();
                let two_r_k = r.mul(&Scalar::from_integer(2 * k, mode));
                let numerator = two_r_k
                    .mul(current)
                    .add(&Scalar::from_integer(k - 1, mode).mul(prev));
                let denominator = one_plus_r2.mul(&Scalar::from_integer(k + 1, mode));
                let next = numerator.neg().div(&denominator).expect("k + 1 > 0");
                *prev = current.clone();
                *current = next;
                *m += 1;
                out
            }
            TaylorSeries::Sqrt { r, current, m } => {
                if *m > 0 {
                    let mode = r.mode();
                    let step = Scalar::from_integer(3 - 2 * *m, mode)
                        .div(&Scalar::from_integer(2 * *m, mode).mul(r))
                        .expect("r > 0");
                    *current = current.mul(&step);
                }
                *m += 1;
                current.clone()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_ctx() -> Context {
        Context::default()
    }

    fn float_ctx() -> Context {
        Context::float(8).unwrap()
    }

    fn exact(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d, ScalarMode::Exact).unwrap()
    }

    fn at_x(value: LCNumber) -> Bindings {
        single_binding("x", value)
    }

    #[test]
    fn square_expands_at_shifted_point() {
        let ctx = exact_ctx();
        let expr = ExprTree::parse("x^2").unwrap();
        let x0 = LCNumber::from_integer(3, ctx);
        let arg = x0.add(&LCNumber::epsilon(ctx)).unwrap();
        let value = eval(&expr, &at_x(arg), ctx).unwrap();
        assert_eq!(value.to_string(), "9 + 6*eps + eps^2");
        assert!(!value.is_truncated());
    }

    #[test]
    fn pythagorean_identity_at_inassignable_input() {
        let ctx = float_ctx();
        let expr = ExprTree::parse("sin(x)^2 + cos(x)^2").unwrap();
        let arg = LCNumber::from_scalar(Scalar::from_f64(1.0), ctx)
            .unwrap()
            .add(&LCNumber::epsilon(ctx))
            .unwrap();
        let value = eval(&expr, &at_x(arg), ctx).unwrap();
        assert!(value.is_truncated());
        let tol = ctx.float_tolerance();
        assert!((value.st().unwrap().to_f64() - 1.0).abs() <= tol);
        for (e, c) in value.terms() {
            if !e.is_zero() {
                assert!(c.to_f64().abs() <= tol, "stray term at {e}: {c}");
            }
        }
    }

    #[test]
    fn sqrt_of_monomial_is_exact() {
        let ctx = exact_ctx();
        let expr = ExprTree::parse("sqrt(x)").unwrap();
        let eps_sq = LCNumber::epsilon(ctx).pow_integer(2).unwrap();
        let value = eval(&expr, &at_x(eps_sq), ctx).unwrap();
        assert_eq!(value, LCNumber::epsilon(ctx));
        assert!(!value.is_truncated());
    }

    #[test]
    fn sqrt_at_infinite_argument_factors_out() {
        let ctx = exact_ctx();
        // sqrt(eps^-2 + eps^-1) = eps^-1 (1 + eps)^(1/2)
        let expr = ExprTree::parse("sqrt(x^-2 + x^-1)").unwrap();
        let value = eval(&expr, &at_x(LCNumber::epsilon(ctx)), ctx).unwrap();
        assert_eq!(value.least_exponent().unwrap().to_string(), "-1");
        assert_eq!(value.coefficient(crate::exponent::Exponent::zero()), exact(1, 2));
        assert!(value.is_truncated());
    }

    #[test]
    fn transcendental_lift_requires_limited_argument() {
        let ctx = exact_ctx();
        let expr = ExprTree::parse("exp(x)").unwrap();
        let err = eval(&expr, &at_x(LCNumber::infinite(ctx)), ctx).unwrap_err();
        assert_eq!(
            err,
            Error::UnliftableAtInfiniteArgument { func: "exp" }
        );
    }

    #[test]
    fn domain_errors() {
        let ctx = exact_ctx();
        let ln = ExprTree::parse("ln(x)").unwrap();
        assert!(matches!(
            eval(&ln, &at_x(LCNumber::epsilon(ctx)), ctx).unwrap_err(),
            Error::Domain(_)
        ));
        let sqrt = ExprTree::parse("sqrt(x)").unwrap();
        assert!(matches!(
            eval(&sqrt, &at_x(LCNumber::from_integer(-4, ctx)), ctx).unwrap_err(),
            Error::Domain(_)
        ));
        let div = ExprTree::parse("1/x").unwrap();
        assert_eq!(
            eval(&div, &at_x(LCNumber::zero(ctx)), ctx).unwrap_err(),
            Error::DivisionByZero
        );
        assert_eq!(
            eval(&ExprTree::parse("pi").unwrap(), &Bindings::new(), ctx).unwrap_err(),
            Error::PiRequiresFloatMode
        );
    }

    #[test]
    fn exact_mode_rejects_transcendental_points() {
        let ctx = exact_ctx();
        let expr = ExprTree::parse("sin(x)").unwrap();
        let arg = LCNumber::from_integer(1, ctx)
            .add(&LCNumber::epsilon(ctx))
            .unwrap();
        assert!(matches!(
            eval(&expr, &at_x(arg), ctx).unwrap_err(),
            Error::NotExactlyRepresentable(_)
        ));
    }

    #[test]
    fn classical_taylor_tables() {
        let zero = Scalar::zero(ScalarMode::Exact);
        let one = Scalar::one(ScalarMode::Exact);

        assert_eq!(
            taylor_coefficients(Func::Exp, &zero, 4).unwrap(),
            vec![exact(1, 1), exact(1, 1), exact(1, 2), exact(1, 6)]
        );
        assert_eq!(
            taylor_coefficients(Func::Sin, &zero, 4).unwrap(),
            vec![exact(0, 1), exact(1, 1), exact(0, 1), exact(-1, 6)]
        );
        assert_eq!(
            taylor_coefficients(Func::Ln, &one, 3).unwrap(),
            vec![exact(0, 1), exact(1, 1), exact(-1, 2)]
        );
        assert_eq!(
            taylor_coefficients(Func::Arctan, &zero, 6).unwrap(),
            vec![
                exact(0, 1),
                exact(1, 1),
                exact(0, 1),
                exact(-1, 3),
                exact(0, 1),
                exact(1, 5)
            ]
        );
        assert_eq!(
            taylor_coefficients(Func::Cosh, &zero, 4).unwrap(),
            vec![exact(1, 1), exact(0, 1), exact(1, 2), exact(0, 1)]
        );
        assert_eq!(
            taylor_coefficients(Func::Sqrt, &exact(4, 1), 3).unwrap(),
            vec![exact(2, 1), exact(1, 4), exact(-1, 64)]
        );
        assert!(taylor_coefficients(Func::Exp, &exact(1, 1), 3).is_err());
        assert!(taylor_coefficients(Func::Ln, &exact(0, 1), 3).is_err());
    }

    #[test]
    fn float_taylor_matches_closed_forms() {
        let r = Scalar::from_f64(0.7);
        let coeffs = taylor_coefficients(Func::Ln, &r, 3).unwrap();
        assert!((coeffs[0].to_f64() - 0.7f64.ln()).abs() < 1e-15);
        assert!((coeffs[1].to_f64() - 1.0 / 0.7).abs() < 1e-15);
        assert!((coeffs[2].to_f64() + 1.0 / (2.0 * 0.49)).abs() < 1e-12);

        let a = taylor_coefficients(Func::Arctan, &Scalar::from_f64(0.5), 2).unwrap();
        assert!((a[0].to_f64() - 0.5f64.atan()).abs() < 1e-15);
        assert!((a[1].to_f64() - 1.0 / 1.25).abs() < 1e-15);
    }

    #[test]
    fn step_fixture() {
        let ctx = exact_ctx();
        let step = ExprTree::parse("step(x)").unwrap();
        let neg = LCNumber::epsilon(ctx).neg();
        assert!(eval(&step, &at_x(neg), ctx).unwrap().is_zero());
        assert_eq!(
            eval(&step, &at_x(LCNumber::zero(ctx)), ctx).unwrap(),
            LCNumber::one(ctx)
        );
        assert_eq!(
            eval(&step, &at_x(LCNumber::epsilon(ctx)), ctx).unwrap(),
            LCNumber::one(ctx)
        );
    }

    #[test]
    fn unbound_variable_reported() {
        let ctx = exact_ctx();
        let expr = ExprTree::parse("x + y").unwrap();
        assert_eq!(
            eval(&expr, &at_x(LCNumber::one(ctx)), ctx).unwrap_err(),
            Error::UnboundVariable("y".into())
        );
    }
}
