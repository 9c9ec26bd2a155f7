//! Calculus procedures built on adequality: derivative, bracketed extremum,
//! tangent line, the product rule with its discarded cross term, and the two
//! continuity probes (infinitesimal and sampled epsilon-delta).
//!
//! All procedures read the function as an expression in the variable `x` and
//! fix the increment to the base infinitesimal `eps`.

use num_rational::BigRational;

use crate::context::{Context, ScalarMode};
use crate::error::{Error, Result};
use crate::eval::{eval, single_binding};
use crate::expr::ExprTree;
use crate::exponent::Exponent;
use crate::number::{Classification, LCNumber};
use crate::scalar::{Scalar, Sign3};

/// Derivative at a real point: the standard part of
/// `(f(A + eps) - f(A)) / eps`, the difference quotient with its remaining
/// infinitesimal terms discarded rather than set to zero.
///
/// The division by `eps` is an exact monomial shift, and the two evaluations
/// follow identical coefficient arithmetic, so the constant terms cancel
/// exactly even in float mode.
pub fn adequality_derivative(f: &ExprTree, at: &Scalar, ctx: Context) -> Result<Scalar> {
    let point = LCNumber::from_scalar(at.clone(), ctx)?;
    let f_at = eval(f, &single_binding("x", point.clone()), ctx)?;
    let shifted = point.add(&LCNumber::epsilon(ctx))?;
    let f_shifted = eval(f, &single_binding("x", shifted), ctx)?;
    let quotient = f_shifted.sub(&f_at)?.shift(Exponent::integer(-1));
    if !quotient.is_limited() {
        return Err(Error::NotDifferentiable(at.to_string()));
    }
    quotient.st()
}

/// A critical point of `f` in `[lo, hi]`, found by bisecting the adequality
/// derivative; requires a sign change (an endpoint with derivative exactly
/// zero is returned as-is). Tolerance is `max(tau, (hi - lo) * 2^-60)`.
pub fn adequality_extremum(
    f: &ExprTree,
    lo: &Scalar,
    hi: &Scalar,
    ctx: Context,
) -> Result<Scalar> {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    if hi.sub(&lo).sign() != Sign3::Positive {
        return Err(Error::NoBracketedCriticalPoint);
    }
    let g_lo = adequality_derivative(f, &lo, ctx)?;
    let g_hi = adequality_derivative(f, &hi, ctx)?;
    if g_lo.is_zero() {
        return Ok(lo);
    }
    if g_hi.is_zero() {
        return Ok(hi);
    }
    if g_lo.sign() == g_hi.sign() {
        return Err(Error::NoBracketedCriticalPoint);
    }
    let lo_sign = g_lo.sign();
    let tolerance = bisection_tolerance(&lo, &hi, ctx);
    let half = Scalar::from_ratio(1, 2, ctx.mode())?;
    for _ in 0..20_000 {
        if hi.sub(&lo).sub(&tolerance).sign() != Sign3::Positive {
            break;
        }
        let mid = lo.add(&hi).mul(&half);
        let g_mid = adequality_derivative(f, &mid, ctx)?;
        match g_mid.sign() {
            Sign3::Zero => return Ok(mid),
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(lo.add(&hi).mul(&half))
}

fn bisection_tolerance(lo: &Scalar, hi: &Scalar, ctx: Context) -> Scalar {
    let tau = match ctx.mode() {
        ScalarMode::Float => Scalar::from_f64(ctx.float_tolerance()),
        ScalarMode::Exact => Scalar::Exact(
            BigRational::from_float(ctx.float_tolerance())
                .unwrap_or_else(|| BigRational::from_integer(0.into())),
        ),
    };
    let width_floor = hi
        .sub(lo)
        .mul(&Scalar::from_ratio(1, 1 << 60, ctx.mode()).expect("nonzero denominator"));
    if tau.sub(&width_floor).sign() == Sign3::Positive {
        tau
    } else {
        width_floor
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentLine {
    pub slope: Scalar,
    pub intercept: Scalar,
}

/// Tangent at a real point: slope from the adequality derivative, intercept
/// from the function value.
pub fn tangent_line(f: &ExprTree, at: &Scalar, ctx: Context) -> Result<TangentLine> {
    let slope = adequality_derivative(f, at, ctx)?;
    let point = LCNumber::from_scalar(at.clone(), ctx)?;
    let value = eval(f, &single_binding("x", point), ctx)?.st()?;
    let intercept = value.sub(&slope.mul(at));
    Ok(TangentLine { slope, intercept })
}

/// Outcome of running the product-rule derivation at a point.
///
/// `lhs_quotient` is the full difference quotient `d(uv)/eps`; `residual` is
/// the discarded cross term `du * dv / eps`, which must be infinitesimal;
/// `rhs` is `u v' + v u'`. The verdict holds when the residual is negligible
/// and the standard part of the quotient equals `rhs` (exactly in exact
/// mode, within the context tolerance in float mode).
#[derive(Debug, Clone)]
pub struct ProductRuleReport {
    pub lhs_quotient: LCNumber,
    pub residual: LCNumber,
    pub rhs: Scalar,
    pub verdict: bool,
}

pub fn product_rule_report(
    u: &ExprTree,
    v: &ExprTree,
    at: &Scalar,
    ctx: Context,
) -> Result<ProductRuleReport> {
    let point = LCNumber::from_scalar(at.clone(), ctx)?;
    let shifted = point.add(&LCNumber::epsilon(ctx))?;
    let u0 = eval(u, &single_binding("x", point.clone()), ctx)?;
    let v0 = eval(v, &single_binding("x", point), ctx)?;
    let u1 = eval(u, &single_binding("x", shifted.clone()), ctx)?;
    let v1 = eval(v, &single_binding("x", shifted), ctx)?;

    let du = u1.sub(&u0)?;
    let dv = v1.sub(&v0)?;
    let lhs_quotient = u1.mul(&v1)?.sub(&u0.mul(&v0)?)?.shift(Exponent::integer(-1));
    let residual = du.mul(&dv)?.shift(Exponent::integer(-1));

    let derivative_of = |d: &LCNumber| -> Result<Scalar> {
        let q = d.shift(Exponent::integer(-1));
        if !q.is_limited() {
            return Err(Error::NotDifferentiable(at.to_string()));
        }
        q.st()
    };
    let u_prime = derivative_of(&du)?;
    let v_prime = derivative_of(&dv)?;
    let rhs = u0.st()?.mul(&v_prime).add(&v0.st()?.mul(&u_prime));

    let residual_negligible = matches!(
        residual.classify(),
        Classification::Zero | Classification::Infinitesimal
    );
    let st_matches = lhs_quotient.is_limited() && {
        let st = lhs_quotient.st()?;
        match ctx.mode() {
            ScalarMode::Exact => st == rhs,
            ScalarMode::Float => (st.to_f64() - rhs.to_f64()).abs() <= ctx.float_tolerance(),
        }
    };
    Ok(ProductRuleReport {
        lhs_quotient,
        residual,
        rhs,
        verdict: residual_negligible && st_matches,
    })
}

/// One infinitesimal displacement and the standard part of the resulting
/// change in `f`, or the failure that evaluation produced.
#[derive(Debug, Clone)]
pub struct ContinuityProbe {
    pub probe: LCNumber,
    pub st_difference: Option<Scalar>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ContinuityReport {
    pub point: Scalar,
    pub probes: Vec<ContinuityProbe>,
    pub microcontinuous: bool,
}

/// The standard probe set: both signs, a scaled copy, and a higher order.
pub fn default_probes(ctx: Context) -> Vec<LCNumber> {
    let eps = LCNumber::epsilon(ctx);
    vec![
        eps.clone(),
        eps.neg(),
        eps.scale(&Scalar::from_integer(3, ctx.mode())),
        eps.pow_integer(2).expect("squaring eps cannot fail"),
    ]
}

/// Infinitesimal continuity test at a real point: `f` moves infinitesimally
/// whenever its argument does, i.e. `st(f(x0 + h) - f(x0)) = 0` for every
/// probe `h`. A probe whose evaluation fails counts as a discontinuity.
///
/// The point must be real. At non-real points the same displacement test
/// tells continuity apart from continuity-on-the-whole-line; reciprocals
/// near the origin separate the two:
///
/// ```
/// use epsilonica::{Context, LCNumber};
///
/// let ctx = Context::default();
/// let eps = LCNumber::epsilon(ctx);
/// // 1/x at the infinitesimal point x = eps, displaced by eps^2:
/// // f(eps + eps^2) - f(eps) = -1 + eps - ..., not infinitesimal,
/// // even though 1/x is continuous at every real point except 0.
/// let at = eps.clone();
/// let displaced = eps.add(&eps.pow_integer(2).unwrap()).unwrap();
/// let diff = displaced.inverse().unwrap().sub(&at.inverse().unwrap()).unwrap();
/// assert!(!diff.adequal(&LCNumber::zero(ctx)).unwrap());
/// ```
pub fn microcontinuous_at(
    f: &ExprTree,
    at: &Scalar,
    probes: &[LCNumber],
    ctx: Context,
) -> Result<ContinuityReport> {
    for probe in probes {
        if probe.classify() != Classification::Infinitesimal {
            return Err(Error::ProbeNotInfinitesimal(probe.to_string()));
        }
    }
    let point = LCNumber::from_scalar(at.clone(), ctx)?;
    let f_at = eval(f, &single_binding("x", point.clone()), ctx)?;
    let mut outcomes = Vec::with_capacity(probes.len());
    let mut microcontinuous = true;
    for probe in probes {
        let displaced = point.add(probe)?;
        let outcome = eval(f, &single_binding("x", displaced), ctx)
            .and_then(|value| value.sub(&f_at)?.st());
        match outcome {
            Ok(st) => {
                if !st.is_zero() {
                    microcontinuous = false;
                }
                outcomes.push(ContinuityProbe {
                    probe: probe.clone(),
                    st_difference: Some(st),
                    failure: None,
                });
            }
            Err(err) => {
                microcontinuous = false;
                outcomes.push(ContinuityProbe {
                    probe: probe.clone(),
                    st_difference: None,
                    failure: Some(err.to_string()),
                });
            }
        }
    }
    Ok(ContinuityReport {
        point: at.clone(),
        probes: outcomes,
        microcontinuous,
    })
}

/// Sampled epsilon-delta companion: the first `delta` in the grid such that
/// `samples` uniform interior points of `(x0 - delta, x0 + delta)` all keep
/// `|f(x') - f(x0)| < eps`. A sampling probe, not a proof; a sample that
/// fails to evaluate disqualifies its `delta`.
pub fn weierstrass_probe(
    f: &ExprTree,
    at: &Scalar,
    eps: &Scalar,
    delta_grid: &[Scalar],
    samples: u32,
    ctx: Context,
) -> Result<Option<Scalar>> {
    if eps.sign() != Sign3::Positive {
        return Err(Error::Domain("eps must be positive".into()));
    }
    if samples == 0 {
        return Err(Error::Domain("samples must be positive".into()));
    }
    if delta_grid.is_empty()
        || delta_grid.iter().any(|d| d.sign() != Sign3::Positive)
        || delta_grid
            .windows(2)
            .any(|w| w[1].sub(&w[0]).sign() != Sign3::Negative)
    {
        return Err(Error::BadDeltaGrid);
    }
    let point = LCNumber::from_scalar(at.clone(), ctx)?;
    let f_at = eval(f, &single_binding("x", point), ctx)?.st()?;
    for delta in delta_grid {
        let mut admissible = true;
        for i in 0..samples {
            let offset = Scalar::from_ratio(
                2 * i as i64 + 1 - samples as i64,
                samples as i64,
                ctx.mode(),
            )?;
            let sample = at.add(&delta.mul(&offset));
            let sample_point = LCNumber::from_scalar(sample, ctx)?;
            match eval(f, &single_binding("x", sample_point), ctx)
                .and_then(|v| v.st())
            {
                Ok(value) => {
                    if eps.sub(&value.sub(&f_at).abs()).sign() != Sign3::Positive {
                        admissible = false;
                        break;
                    }
                }
                Err(_) => {
                    admissible = false;
                    break;
                }
            }
        }
        if admissible {
            return Ok(Some(delta.clone()));
        }
    }
    Ok(None)
}
