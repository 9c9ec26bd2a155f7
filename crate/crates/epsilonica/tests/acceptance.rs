//! Acceptance suite. Each test pins one criterion at its stated tolerance
//! and prints a `PASS` line with its runtime (visible with `--nocapture`).
//! Random cases are seeded so every run checks the same inputs.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use epsilonica::{
    archimedean, cauchy, euler, eval, fermat, single_binding, taylor_coefficients,
    Classification, Context, Exponent, ExprTree, Func, LCNumber, Scalar, ScalarMode, Sign3,
};

fn ctx() -> Context {
    Context::default()
}

fn fctx() -> Context {
    Context::float(8).unwrap()
}

fn exact(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d, ScalarMode::Exact).unwrap()
}

fn pass(number: u32, name: &str, started: Instant) {
    println!(
        "acceptance {number:02} {name}: PASS ({} ms)",
        started.elapsed().as_millis()
    );
}

/// Random exact-mode series: exponents in {0,...,6}/2, |p/q| <= 100.
fn random_lc(rng: &mut ChaCha8Rng) -> LCNumber {
    let count = rng.random_range(0..=3usize);
    let raw = (0..count)
        .map(|_| {
            (
                Exponent::new(rng.random_range(0..=6), 2).unwrap(),
                exact(rng.random_range(-100..=100), rng.random_range(1..=100)),
            )
        })
        .collect();
    LCNumber::normalize(raw, ctx()).unwrap()
}

#[test]
fn criterion_01_field_axiom_property_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xF1E1D);
    let one = LCNumber::one(ctx());
    for _ in 0..10_000 {
        let x = random_lc(&mut rng);
        let y = random_lc(&mut rng);
        let z = random_lc(&mut rng);

        assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        assert_eq!(
            x.add(&y).unwrap().add(&z).unwrap(),
            x.add(&y.add(&z).unwrap()).unwrap()
        );
        assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        assert_eq!(
            x.mul(&y).unwrap().mul(&z).unwrap(),
            x.mul(&y.mul(&z).unwrap()).unwrap()
        );
        assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
        assert_eq!(x.mul(&one).unwrap(), x);
        assert!(x.sub(&x).unwrap().is_zero());

        if x.compare(&y).unwrap() == Sign3::Negative {
            assert_eq!(
                x.add(&z).unwrap().compare(&y.add(&z).unwrap()).unwrap(),
                Sign3::Negative
            );
            if z.is_positive() {
                assert_eq!(
                    x.mul(&z).unwrap().compare(&y.mul(&z).unwrap()).unwrap(),
                    Sign3::Negative
                );
            }
        }
    }
    pass(1, "field-axiom property suite (10,000 triples)", started);
}

#[test]
fn criterion_02_non_archimedean_witness() {
    let started = Instant::now();
    let eps = LCNumber::epsilon(ctx());
    assert_eq!(eps.classify(), Classification::Infinitesimal);
    assert_eq!(
        archimedean::exceeds(&eps, &LCNumber::one(ctx())).unwrap(),
        None
    );
    assert!(!eps.mul(&eps).unwrap().is_zero());
    pass(2, "non-Archimedean witness", started);
}

#[test]
fn criterion_03_multiple_exceeding_vs_lemma_separation() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5E9A);
    for _ in 0..100 {
        // Appreciable positive pair: nonzero constant plus infinitesimal tail.
        let mut appreciable = || {
            let constant = exact(rng.random_range(1..=100), rng.random_range(1..=20));
            let tail = random_lc(&mut rng);
            let tail = tail
                .sub(&LCNumber::from_scalar(tail.st().unwrap(), ctx()).unwrap())
                .unwrap();
            LCNumber::from_scalar(constant, ctx())
                .unwrap()
                .add(&tail)
                .unwrap()
        };
        let a = appreciable();
        let b = appreciable();
        assert!(
            archimedean::exceeds(&a, &b).unwrap().is_some(),
            "no witness for appreciable pair {a}, {b}"
        );
    }
    let one = LCNumber::one(ctx());
    let one_plus_eps = one.add(&LCNumber::epsilon(ctx())).unwrap();
    assert_eq!(
        archimedean::archimedes_lemma_witness(&one, &one_plus_eps, &one).unwrap(),
        None
    );
    pass(3, "multiple-exceeding defined, lemma witness absent", started);
}

#[test]
fn criterion_04_derivative_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xDE51);

    // Exact mode where the closed form is rational: powers, reciprocal, and
    // square roots at rational squares.
    let square = ExprTree::parse("x^2").unwrap();
    let cube = ExprTree::parse("x^3").unwrap();
    let recip = ExprTree::parse("1/x").unwrap();
    let root = ExprTree::parse("sqrt(x)").unwrap();
    for _ in 0..50 {
        let a = exact(rng.random_range(-50..=50).max(1), rng.random_range(1..=20));

        let d = fermat::adequality_derivative(&square, &a, ctx()).unwrap();
        assert_eq!(d, exact(2, 1).mul(&a));

        let d = fermat::adequality_derivative(&cube, &a, ctx()).unwrap();
        assert_eq!(d, exact(3, 1).mul(&a).mul(&a));

        let d = fermat::adequality_derivative(&recip, &a, ctx()).unwrap();
        assert_eq!(d, a.mul(&a).recip().unwrap().neg());

        let sq = a.mul(&a);
        let d = fermat::adequality_derivative(&root, &sq, ctx()).unwrap();
        assert_eq!(d, a.abs().mul(&exact(2, 1)).recip().unwrap());
    }

    // Float mode for the whole table, against central finite differences.
    let cases: [(&str, fn(f64) -> f64); 7] = [
        ("x^2", |x| x * x),
        ("x^3", |x| x * x * x),
        ("sin(x)", |x| x.sin()),
        ("exp(x)", |x| x.exp()),
        ("ln(x)", |x| x.ln()),
        ("sqrt(x)", |x| x.sqrt()),
        ("1/x", |x| 1.0 / x),
    ];
    let h = 1e-6;
    for (src, f) in cases {
        let expr = ExprTree::parse(src).unwrap();
        for _ in 0..50 {
            // Positive interior points keep every function in its domain.
            let x0 = 0.2 + 2.0 * rng.random::<f64>();
            let d = fermat::adequality_derivative(&expr, &Scalar::from_f64(x0), fctx())
                .unwrap()
                .to_f64();
            let central = (f(x0 + h) - f(x0 - h)) / (2.0 * h);
            assert!(
                (d - central).abs() <= 1e-6 * central.abs().max(1.0),
                "{src} at {x0}: {d} vs {central}"
            );
        }
    }
    pass(4, "derivative oracle (closed forms + central differences)", started);
}

fn poly_expr(coeffs: &[Scalar]) -> ExprTree {
    let mut expr: Option<ExprTree> = None;
    for (degree, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c_lit = match c {
            Scalar::Exact(r) => ExprTree::Literal(r.clone()),
            Scalar::Float(_) => unreachable!("exact-mode polynomials only"),
        };
        let monomial = match degree {
            0 => c_lit,
            _ => ExprTree::Mul(
                Box::new(c_lit),
                Box::new(ExprTree::Pow(
                    Box::new(ExprTree::Variable("x".into())),
                    num_rational::Rational64::from_integer(degree as i64),
                )),
            ),
        };
        expr = Some(match expr {
            None => monomial,
            Some(acc) => ExprTree::Add(Box::new(acc), Box::new(monomial)),
        });
    }
    expr.unwrap_or_else(|| ExprTree::literal_integer(0))
}

/// Independent oracle: evaluate p and its coefficient-wise derivative at x0.
fn poly_value_and_derivative(coeffs: &[Scalar], x0: &Scalar) -> (Scalar, Scalar) {
    let mode = x0.mode();
    let mut value = Scalar::zero(mode);
    let mut derivative = Scalar::zero(mode);
    let mut power = Scalar::one(mode);
    let mut prev_power = Scalar::zero(mode);
    for (degree, c) in coeffs.iter().enumerate() {
        value = value.add(&c.mul(&power));
        if degree > 0 {
            derivative = derivative.add(
                &c.mul(&Scalar::from_integer(degree as i64, mode)).mul(&prev_power),
            );
        }
        prev_power = power.clone();
        power = power.mul(x0);
    }
    (value, derivative)
}

#[test]
fn criterion_05_product_rule_on_random_polynomials() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9D0D);
    for _ in 0..200 {
        let degree_u = rng.random_range(0..=5usize);
        let degree_v = rng.random_range(0..=5usize);
        let coeffs_u: Vec<Scalar> = (0..=degree_u)
            .map(|_| exact(rng.random_range(-9..=9), rng.random_range(1..=4)))
            .collect();
        let coeffs_v: Vec<Scalar> = (0..=degree_v)
            .map(|_| exact(rng.random_range(-9..=9), rng.random_range(1..=4)))
            .collect();
        let x0 = exact(rng.random_range(-10..=10), rng.random_range(1..=4));

        let u = poly_expr(&coeffs_u);
        let v = poly_expr(&coeffs_v);
        let report = fermat::product_rule_report(&u, &v, &x0, ctx()).unwrap();

        assert!(report.verdict);
        assert!(
            report.residual.is_zero()
                || report.residual.least_exponent().unwrap() >= Exponent::integer(1),
            "residual below first order: {}",
            report.residual
        );

        let (u_val, u_der) = poly_value_and_derivative(&coeffs_u, &x0);
        let (v_val, v_der) = poly_value_and_derivative(&coeffs_v, &x0);
        let oracle_rhs = u_val.mul(&v_der).add(&v_val.mul(&u_der));
        assert_eq!(report.rhs, oracle_rhs);
        assert_eq!(report.lhs_quotient.st().unwrap(), oracle_rhs);
    }
    pass(5, "product rule on 200 random polynomial pairs", started);
}

#[test]
fn criterion_06_microcontinuity_and_sampled_delta_agree() {
    let started = Instant::now();
    let fixtures = [
        ("exp(x)", 0.3),
        ("ln(x)", 1.7),
        ("sin(x)", 0.5),
        ("cos(x)", 1.1),
        ("sinh(x)", 0.4),
        ("cosh(x)", 0.9),
        ("sqrt(x)", 2.25),
        ("arctan(x)", 0.8),
        ("x^2", 3.0),
        ("1/x", 2.0),
    ];
    let grid = [
        Scalar::from_f64(0.5),
        Scalar::from_f64(0.1),
        Scalar::from_f64(0.01),
        Scalar::from_f64(0.001),
    ];
    let probes = fermat::default_probes(fctx());
    for (src, at) in fixtures {
        let expr = ExprTree::parse(src).unwrap();
        let at = Scalar::from_f64(at);
        let report = fermat::microcontinuous_at(&expr, &at, &probes, fctx()).unwrap();
        assert!(report.microcontinuous, "{src} not microcontinuous at {at}");
        let delta =
            fermat::weierstrass_probe(&expr, &at, &Scalar::from_f64(0.01), &grid, 100, fctx())
                .unwrap();
        assert!(delta.is_some(), "{src}: no delta found at {at}");
    }

    let step = ExprTree::parse("step(x)").unwrap();
    let at = Scalar::from_f64(0.0);
    let report = fermat::microcontinuous_at(&step, &at, &probes, fctx()).unwrap();
    assert!(!report.microcontinuous);
    let delta =
        fermat::weierstrass_probe(&step, &at, &Scalar::from_f64(0.5), &grid, 100, fctx())
            .unwrap();
    assert_eq!(delta, None);
    pass(6, "microcontinuity verdicts agree with sampled deltas", started);
}

#[test]
fn criterion_07_basel_tail() {
    let started = Instant::now();
    let n = 1_000_000u64;
    let run = euler::basel_partial(n, ScalarMode::Float).unwrap();
    assert!(
        run.error > 0.99e-6 && run.error < 1.01e-6,
        "raw error {}",
        run.error
    );
    let tail_corrected = (run.error - 1.0 / n as f64).abs();
    assert!(tail_corrected < 2e-12, "tail-corrected residual {tail_corrected}");
    pass(7, "inverse-square sum tail at n = 10^6", started);
}

#[test]
fn criterion_08_sine_product_convergence() {
    let started = Instant::now();
    let fine = euler::sine_product(1.0, 100_000).unwrap();
    assert!(fine.abs_error < 1e-4, "error {}", fine.abs_error);
    let coarse = euler::sine_product(1.0, 1_000).unwrap();
    assert!(
        fine.abs_error < coarse.abs_error,
        "no improvement: {} vs {}",
        fine.abs_error,
        coarse.abs_error
    );
    pass(8, "sine product error at K = 10^5", started);
}

#[test]
fn criterion_09_factor_identity() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xFAC7);
    for j in 2..=32u64 {
        for _ in 0..20 {
            let a = rng.random_range(-3.0..=3.0);
            let b = rng.random_range(-3.0..=3.0);
            let residual = euler::factor_identity_residual(j, a, b).unwrap();
            assert!(residual <= 1e-9, "j={j} a={a} b={b}: residual {residual}");
        }
    }
    pass(9, "quadratic factor identity for j = 2..=32", started);
}

#[test]
fn criterion_10_cosine_replacement_bound() {
    let started = Instant::now();
    for theta in [1e-3, 1e-2, 1e-1, 1.0] {
        let run = euler::cos_replacement_residual(theta);
        assert!(
            run.residual <= run.bound,
            "theta={theta}: {} > {}",
            run.residual,
            run.bound
        );
    }
    pass(10, "cosine replacement stays under theta^4/24", started);
}

#[test]
fn criterion_11_delta_kernel_quadrature() {
    let started = Instant::now();
    let unit = ExprTree::parse("1").unwrap();
    for i in 1..=5u32 {
        let alpha = 10f64.powi(-(i as i32));
        for j in 0..5u32 {
            let halfwidth = 10f64.powi(j as i32 - 2);
            let run = cauchy::delta_integral(&unit, 0.7, alpha, halfwidth, 1e-10).unwrap();
            let closed_form = (halfwidth / alpha).atan();
            assert!(
                (run.value - closed_form).abs() <= 1e-10,
                "alpha={alpha} halfwidth={halfwidth}: {} vs {closed_form}",
                run.value
            );
        }
    }

    let fixture = ExprTree::parse("cos(x - 2)").unwrap();
    let run = cauchy::delta_integral(&fixture, 2.0, 1e-5, 0.1, 1e-10).unwrap();
    assert!(
        (run.value - std::f64::consts::FRAC_PI_2).abs() < 1e-3,
        "cos fixture error {}",
        run.abs_error
    );

    // Concentration trend: shrinking alpha shrinks the error.
    let mut previous = f64::INFINITY;
    for alpha in [1e-2, 1e-3, 1e-4] {
        let run = cauchy::delta_integral(&fixture, 2.0, alpha, 0.5, 1e-12).unwrap();
        assert!(
            run.abs_error < previous,
            "error did not shrink at alpha={alpha}: {} vs {previous}",
            run.abs_error
        );
        previous = run.abs_error;
    }
    pass(11, "delta kernel against arctan closed form", started);
}

#[test]
fn criterion_12_limits_via_standard_part() {
    let started = Instant::now();
    // Hand-computed limits for a corpus of rational and root sequences.
    let corpus: [(&str, i64, i64); 30] = [
        ("(2*n + 1)/(n + 3)", 2, 1),
        ("1/n", 0, 1),
        ("sqrt(n^2 + n) - n", 1, 2),
        ("(n^2 - 1)/(n^2 + 1)", 1, 1),
        ("(3*n^3 + n)/(2*n^3 + 5)", 3, 2),
        ("(n + 1)/(2*n + 7)", 1, 2),
        ("(5*n^2 + 3*n + 1)/(n^2 + n + 1)", 5, 1),
        ("n/(n^2 + 1)", 0, 1),
        ("(2*n^2 + n)/(4*n^2 - n + 6)", 1, 2),
        ("sqrt(n^2 + 2*n) - n", 1, 1),
        ("sqrt(4*n^2 + n) - 2*n", 1, 4),
        ("sqrt(n^2 + 6*n + 2) - n", 3, 1),
        ("n - sqrt(n^2 - n)", 1, 2),
        ("sqrt(9*n^2 + n) - 3*n", 1, 6),
        ("(4*n^3 + 3*n^2)/(8*n^3 + 7)", 1, 2),
        ("(1 - n)/(1 + n)", -1, 1),
        ("(n^2 + n)/(3*n^2)", 1, 3),
        ("1/n^2", 0, 1),
        ("(7*n + 2)/(n + 1)", 7, 1),
        ("(2*n + 1)^2/(4*n^2 + 3)", 1, 1),
        ("sqrt(n^2 + 4*n) - n", 2, 1),
        ("sqrt(16*n^2 + 8*n) - 4*n", 1, 1),
        ("(6*n^2 - n)/(2*n^2 + n)", 3, 1),
        ("(n^3 + 1)/(n^3 + n^2)", 1, 1),
        ("(10*n + 5)/(2*n)", 5, 1),
        ("sqrt(n^2 + 1) - n", 0, 1),
        ("(3*n + 2)/(6*n + 1)", 1, 2),
        ("(n^2 + 2*n + 1)/n^2", 1, 1),
        ("(8*n^4 + n^2)/(2*n^4 + n^3)", 4, 1),
        ("(5*n + 1)/(5*n)", 1, 1),
    ];
    for (src, p, q) in corpus {
        let expr = ExprTree::parse(src).unwrap();
        let limit = cauchy::limit_via_st(&expr, ctx()).unwrap();
        assert_eq!(limit, exact(p, q), "{src}");

        // Brute force at a large finite index.
        let big = LCNumber::from_scalar(Scalar::from_f64(1e8), fctx()).unwrap();
        let brute = eval(&expr, &single_binding("n", big), fctx())
            .unwrap()
            .st()
            .unwrap()
            .to_f64();
        assert!(
            (brute - p as f64 / q as f64).abs() <= 1e-6,
            "{src}: brute {brute} vs {p}/{q}"
        );
    }
    pass(12, "30-sequence limit corpus, exact and brute-force", started);
}

// Auxiliary pins used by several criteria: the classical series tables stay
// frozen under refactoring.
#[test]
fn taylor_tables_stay_pinned() {
    let zero = Scalar::zero(ScalarMode::Exact);
    assert_eq!(
        taylor_coefficients(Func::Exp, &zero, 4).unwrap(),
        vec![exact(1, 1), exact(1, 1), exact(1, 2), exact(1, 6)]
    );
    assert_eq!(
        taylor_coefficients(Func::Sin, &zero, 4).unwrap(),
        vec![exact(0, 1), exact(1, 1), exact(0, 1), exact(-1, 6)]
    );
    assert_eq!(
        taylor_coefficients(Func::Ln, &Scalar::one(ScalarMode::Exact), 3).unwrap(),
        vec![exact(0, 1), exact(1, 1), exact(-1, 2)]
    );
}
