//! The concentrated-kernel integral, the variable-quantity decomposition,
//! and limits of sequences read off as standard parts at an infinite index.

use std::f64::consts::PI;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::eval::{eval, single_binding};
use crate::expr::ExprTree;
use crate::number::LCNumber;
use crate::scalar::Scalar;

pub const DEFAULT_QUADRATURE_BUDGET: u64 = 1_000_000;

/// Result of integrating `F` against the kernel
/// `alpha / (alpha^2 + (mu - a)^2)` over `[a - h, a + h]`, halved, against
/// its concentration target `(pi/2) F(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaIntegralResult {
    pub value: f64,
    pub target: f64,
    pub abs_error: f64,
    pub alpha: f64,
    pub halfwidth: f64,
    pub quadrature_evals: u64,
    /// False when the evaluation budget ran out; the value is then partial.
    pub converged: bool,
}

/// Evaluates `(1/2) * integral of F(mu) * alpha / (alpha^2 + (mu-a)^2)` over
/// `mu in [a - halfwidth, a + halfwidth]` by adaptive Simpson quadrature
/// after the substitution `mu = a + alpha tan(theta)`, which absorbs the
/// kernel: the integrand becomes `F(a + alpha tan theta) / 2` on
/// `[-atan(h/alpha), atan(h/alpha)]`, flat even when `alpha` is tiny.
///
/// `F` is an expression in `x`, evaluated in float arithmetic.
pub fn delta_integral(
    f: &ExprTree,
    a: f64,
    alpha: f64,
    halfwidth: f64,
    tol: f64,
) -> Result<DeltaIntegralResult> {
    delta_integral_with_budget(f, a, alpha, halfwidth, tol, DEFAULT_QUADRATURE_BUDGET)
}

pub fn delta_integral_with_budget(
    f: &ExprTree,
    a: f64,
    alpha: f64,
    halfwidth: f64,
    tol: f64,
    budget: u64,
) -> Result<DeltaIntegralResult> {
    if !(alpha > 0.0) || !(halfwidth > 0.0) {
        return Err(Error::NonPositiveKernelParameter);
    }
    let ctx = Context::float(crate::context::DEFAULT_DEPTH)?;
    let sample = |mu: f64| -> Result<f64> {
        let point = LCNumber::from_scalar(Scalar::from_f64(mu), ctx)?;
        Ok(eval(f, &single_binding("x", point), ctx)?.st()?.to_f64())
    };

    let theta_max = (halfwidth / alpha).atan();
    let mut integrand = |theta: f64| -> Result<f64> { sample(a + alpha * theta.tan()) };

    let mut quad = Quadrature {
        evals: 0,
        budget,
        converged: true,
    };
    let integral = quad.integrate(&mut integrand, -theta_max, theta_max, tol)?;
    let value = integral / 2.0;
    let target = PI / 2.0 * sample(a)?;
    Ok(DeltaIntegralResult {
        value,
        target,
        abs_error: (value - target).abs(),
        alpha,
        halfwidth,
        quadrature_evals: quad.evals,
        converged: quad.converged,
    })
}

struct Quadrature {
    evals: u64,
    budget: u64,
    converged: bool,
}

impl Quadrature {
    fn integrate(
        &mut self,
        f: &mut impl FnMut(f64) -> Result<f64>,
        a: f64,
        b: f64,
        tol: f64,
    ) -> Result<f64> {
        let fa = self.eval(f, a)?;
        let m = 0.5 * (a + b);
        let fm = self.eval(f, m)?;
        let fb = self.eval(f, b)?;
        let whole = simpson(a, b, fa, fm, fb);
        self.refine(f, a, b, fa, fm, fb, whole, tol, 52)
    }

    fn eval(&mut self, f: &mut impl FnMut(f64) -> Result<f64>, x: f64) -> Result<f64> {
        self.evals += 1;
        f(x)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        f: &mut impl FnMut(f64) -> Result<f64>,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(f, lm)?;
        let frm = self.eval(f, rm)?;
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 || self.evals >= self.budget {
            self.converged = false;
            return Ok(left + right + delta / 15.0);
        }
        let half_tol = 0.5 * tol;
        let l = self.refine(f, a, m, fa, flm, fm, left, half_tol, depth - 1)?;
        let r = self.refine(f, m, b, fm, frm, fb, right, half_tol, depth - 1)?;
        Ok(l + r)
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Splits a limited quantity into its assignable part and an infinitesimal:
/// `q = c + alpha` with `c = st(q)`. The reassembly is exact.
pub fn variable_decompose(q: &LCNumber) -> Result<(Scalar, LCNumber)> {
    if !q.is_limited() {
        return Err(Error::NoDecomposition);
    }
    let c = q.st()?;
    let constant = LCNumber::from_scalar(c.clone(), *q.context())?;
    let alpha_part = q.sub(&constant)?;
    Ok((c, alpha_part))
}

/// Limit of a sequence `u_n` as the standard part of `u` evaluated at the
/// infinite index `n = eps^-1`.
///
/// No symbolic rearrangement is attempted: the expression must already be
/// evaluable there (rational expressions, and root/power compositions whose
/// leading data factors out). Unlimited values report divergence; elementary
/// functions stuck at an infinite argument are not computable this way.
pub fn limit_via_st(u: &ExprTree, ctx: Context) -> Result<Scalar> {
    let infinite_index = LCNumber::infinite(ctx);
    let value = eval(u, &single_binding("n", infinite_index), ctx).map_err(|e| match e {
        Error::UnliftableAtInfiniteArgument { func } => {
            Error::LimitNotComputable(format!("{func} at an infinite argument"))
        }
        other => other,
    })?;
    if !value.is_limited() {
        return Err(Error::SequenceDiverges);
    }
    value.st()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::ScalarMode;
    use crate::scalar::Scalar;

    fn ctx() -> Context {
        Context::default()
    }

    fn exact(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d, ScalarMode::Exact).unwrap()
    }

    #[test]
    fn constant_kernel_matches_arctan() {
        let f = ExprTree::parse("1").unwrap();
        for (alpha, halfwidth) in [(1e-2, 1.0), (1e-4, 0.5), (1e-6, 1e-2)] {
            let run = delta_integral(&f, 0.3, alpha, halfwidth, 1e-12).unwrap();
            let closed_form = (halfwidth / alpha).atan();
            assert!(
                (run.value - closed_form).abs() < 1e-10,
                "alpha={alpha} halfwidth={halfwidth}: {} vs {closed_form}",
                run.value
            );
            assert!(run.converged);
        }
    }

    #[test]
    fn narrow_kernel_approaches_half_pi() {
        let f = ExprTree::parse("1").unwrap();
        let run = delta_integral(&f, 0.0, 1e-6, 1e-2, 1e-12).unwrap();
        assert!((run.value - (PI / 2.0 - 1e-4)).abs() < 1e-10);
    }

    #[test]
    fn cosine_fixture_concentrates() {
        let f = ExprTree::parse("cos(x - 2)").unwrap();
        let run = delta_integral(&f, 2.0, 1e-5, 0.1, 1e-10).unwrap();
        assert!(run.abs_error < 1e-3, "error {}", run.abs_error);
        assert!((run.target - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_parameters_validated() {
        let f = ExprTree::parse("1").unwrap();
        assert_eq!(
            delta_integral(&f, 0.0, -1.0, 1.0, 1e-8).unwrap_err(),
            Error::NonPositiveKernelParameter
        );
        assert_eq!(
            delta_integral(&f, 0.0, 1.0, 0.0, 1e-8).unwrap_err(),
            Error::NonPositiveKernelParameter
        );
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let f = ExprTree::parse("cos(100*x)").unwrap();
        let run = delta_integral_with_budget(&f, 0.0, 0.5, 3.0, 1e-14, 16).unwrap();
        assert!(!run.converged);
        assert!(run.quadrature_evals >= 16);
    }

    #[test]
    fn decompose_variable_quantity() {
        let eps = LCNumber::epsilon(ctx());
        let q = LCNumber::from_integer(3, ctx())
            .add(&eps)
            .unwrap()
            .sub(&eps.pow_integer(2).unwrap())
            .unwrap();
        let (c, alpha) = variable_decompose(&q).unwrap();
        assert_eq!(c, exact(3, 1));
        assert_eq!(alpha.to_string(), "eps - eps^2");
        // Reassembles exactly.
        let back = LCNumber::from_scalar(c, ctx()).unwrap().add(&alpha).unwrap();
        assert_eq!(back, q);

        let (c, alpha) = variable_decompose(&LCNumber::from_integer(5, ctx())).unwrap();
        assert_eq!(c, exact(5, 1));
        assert!(alpha.is_zero());

        assert_eq!(
            variable_decompose(&LCNumber::infinite(ctx())).unwrap_err(),
            Error::NoDecomposition
        );
    }

    #[test]
    fn limits_of_rational_sequences() {
        let u = ExprTree::parse("(2*n + 1) / (n + 3)").unwrap();
        assert_eq!(limit_via_st(&u, ctx()).unwrap(), exact(2, 1));

        let v = ExprTree::parse("1/n").unwrap();
        assert!(limit_via_st(&v, ctx()).unwrap().is_zero());
    }

    #[test]
    fn limit_with_root_composition() {
        let u = ExprTree::parse("sqrt(n^2 + n) - n").unwrap();
        assert_eq!(limit_via_st(&u, ctx()).unwrap(), exact(1, 2));
    }

    #[test]
    fn divergence_and_unliftable_cases() {
        let diverges = ExprTree::parse("n^2 / (n + 1)").unwrap();
        assert_eq!(
            limit_via_st(&diverges, ctx()).unwrap_err(),
            Error::SequenceDiverges
        );
        let stuck = ExprTree::parse("sin(n)").unwrap();
        assert!(matches!(
            limit_via_st(&stuck, ctx()).unwrap_err(),
            Error::LimitNotComputable(_)
        ));
    }
}
