//! Command-line surface: every library operation behind one subcommand, with
//! a shared expression grammar, plain-text rendering, and an optional JSON
//! envelope (`--json`) described by `docs/command-result.schema.json`.
//!
//! Exit codes: 0 success, 1 domain error (one-line diagnostic on stderr),
//! 2 usage error.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use epsilonica::{
    archimedean, cauchy, euler, eval_constant, fermat, parse_number, Bindings, Context,
    ExprTree, LCNumber, Scalar, ScalarMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Parser)]
#[command(
    name = "epsilonica",
    version,
    about = "Arithmetic with infinitesimals and the classical calculus procedures built on them"
)]
struct Cli {
    /// Truncation depth D: exponents are kept within [least, least + D)
    #[arg(long, global = true, default_value_t = 8)]
    depth: u32,

    /// Coefficient arithmetic: exact rationals or binary64 floats
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,

    /// Emit one machine-readable JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Bind a variable to a constant expression, e.g. --bind x=3 (repeatable)
    #[arg(long = "bind", global = true, value_name = "VAR=EXPR")]
    bind: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Standard part of an expression
    St { expr: String },
    /// Lowest-order term of an expression (transcendental homogeneity)
    Leading { expr: String },
    /// Factor as lead * eps^order * (1 + residue)
    Decompose { expr: String },
    /// Size class: zero, infinitesimal, appreciable, or infinite
    Classify { expr: String },
    /// Whether two expressions differ by at most an infinitesimal
    Adequal { a: String, b: String },
    /// Order comparison of two expressions
    Compare { a: String, b: String },
    /// Multiple-exceeding decision procedures
    #[command(subcommand)]
    Archimedean(ArchimedeanCommand),
    /// Proportion test A : B :: C : D
    Hankel {
        a: String,
        b: String,
        c: String,
        d: String,
    },
    /// Derivative of f(x) at a point, by discarding the infinitesimal part
    Derive {
        expr: String,
        #[arg(long)]
        at: String,
    },
    /// Critical point of f(x) bracketed in [lo, hi]
    Extremum {
        expr: String,
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// Tangent line to f(x) at a point
    Tangent {
        expr: String,
        #[arg(long)]
        at: String,
    },
    /// Infinitesimal continuity probe at a real point
    Microcont {
        expr: String,
        #[arg(long)]
        at: String,
        /// Extra displacement expressions (default: eps, -eps, 3*eps, eps^2)
        #[arg(long = "probe")]
        probes: Vec<String>,
    },
    /// Sampled epsilon-delta continuity probe
    Weierstrass {
        expr: String,
        #[arg(long)]
        at: String,
        #[arg(long)]
        eps: String,
        /// Descending candidate deltas, comma-separated
        #[arg(long, value_delimiter = ',')]
        grid: Vec<String>,
        #[arg(long, default_value_t = 100)]
        samples: u32,
    },
    /// Product-rule derivation reports
    #[command(subcommand)]
    Leibniz(LeibnizCommand),
    /// Infinite products, finite surrogates, and comparison modes
    #[command(subcommand)]
    Euler(EulerCommand),
    /// Kernel integrals, decompositions, and limits via standard part
    #[command(subcommand)]
    Cauchy(CauchyCommand),
}

#[derive(Subcommand)]
enum ArchimedeanCommand {
    /// Least n with n*a > b, if any
    Exceeds { a: String, b: String },
    /// Least n with n*(b - a) > c, if any
    Lemma { a: String, b: String, c: String },
}

#[derive(Subcommand)]
enum LeibnizCommand {
    /// Run d(uv) = u dv + v du at a point and report the discarded term
    ProductRule {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        at: String,
    },
}

#[derive(Subcommand)]
enum EulerCommand {
    /// x * prod (1 - x^2 / k^2 pi^2) against sin x
    SineProduct(ProductArgs),
    /// x * prod (1 + x^2 / k^2 pi^2) against sinh x
    Sinh(ProductArgs),
    /// (1 + x/j)^j, or its sinh combination with --hyperbolic
    Exp {
        #[arg(long)]
        x: String,
        #[arg(long)]
        j: u64,
        #[arg(long)]
        hyperbolic: bool,
    },
    /// Relative residual of the quadratic factorization of a^j - b^j
    FactorIdentity {
        #[arg(long)]
        j: u64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
    /// Residual of cos(theta) ~ 1 - theta^2/2 against theta^4/24
    CosBound {
        #[arg(long)]
        theta: f64,
    },
    /// Partial inverse-square sum against pi^2/6
    Basel {
        #[arg(long)]
        n: u64,
    },
    /// Arithmetic and geometric equality of two expressions
    Equal { a: String, b: String },
    /// Ratio of two expressions and the value assigned to it
    Cancel { num: String, den: String },
}

#[derive(Args)]
struct ProductArgs {
    #[arg(long)]
    x: f64,
    #[arg(long)]
    k: u64,
}

#[derive(Subcommand)]
enum CauchyCommand {
    /// Concentrated-kernel integral of F(x) around a
    Delta {
        #[arg(long)]
        f: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        halfwidth: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = cauchy::DEFAULT_QUADRATURE_BUDGET)]
        budget: u64,
    },
    /// Limit of a sequence u(n) as the standard part at n = eps^-1
    Limit { expr: String },
    /// Split a limited quantity into standard part plus infinitesimal
    Decompose { expr: String },
}

pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses and runs one invocation. `argv` includes the program name.
pub fn execute(argv: &[&str]) -> CliOutcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CliOutcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match run(&cli) {
        Ok(rendered) => CliOutcome {
            code: 0,
            stdout: rendered,
            stderr: String::new(),
        },
        Err(err) => CliOutcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

struct Report {
    command: &'static str,
    inputs: Value,
    output: Value,
    truncated: bool,
    human: String,
}

fn run(cli: &Cli) -> Result<String, epsilonica::Error> {
    let mode = match cli.mode {
        ModeArg::Exact => ScalarMode::Exact,
        ModeArg::Float => ScalarMode::Float,
    };
    let ctx = Context::new(cli.depth, mode)?;
    let bindings = parse_bindings(&cli.bind, ctx)?;
    let report = dispatch(&cli.command, ctx, &bindings)?;
    if cli.json {
        let envelope = json!({
            "command": report.command,
            "inputs": report.inputs,
            "output": report.output,
            "flags": {
                "exact": mode == ScalarMode::Exact && !report.truncated,
                "truncated": report.truncated,
            },
        });
        Ok(format!("{envelope}\n"))
    } else {
        Ok(report.human)
    }
}

fn parse_bindings(pairs: &[String], ctx: Context) -> Result<Bindings, epsilonica::Error> {
    let mut bindings = Bindings::new();
    for pair in pairs {
        let (name, value) = pair.split_once('=').ok_or_else(|| epsilonica::Error::Parse {
            position: 0,
            message: format!("binding `{pair}` is not of the form VAR=EXPR"),
        })?;
        bindings.insert(name.trim().to_string(), parse_number(value, ctx)?);
    }
    Ok(bindings)
}

fn eval_arg(src: &str, bindings: &Bindings, ctx: Context) -> Result<LCNumber, epsilonica::Error> {
    epsilonica::eval(&ExprTree::parse(src)?, bindings, ctx)
}

fn scalar_arg(src: &str, ctx: Context) -> Result<Scalar, epsilonica::Error> {
    let value = eval_constant(&ExprTree::parse(src)?, ctx)?;
    value
        .as_scalar()
        .ok_or_else(|| epsilonica::Error::NotAScalar(src.to_string()))
}

fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(_) => json!(s.to_string()),
        Scalar::Float(v) => json!(v),
    }
}

fn number_json(x: &LCNumber) -> Value {
    json!(x.to_string())
}

fn witness_human(witness: Option<u64>) -> String {
    match witness {
        Some(n) => format!("n = {n}\n"),
        None => "absent\n".to_string(),
    }
}

fn dispatch(
    command: &Command,
    ctx: Context,
    bindings: &Bindings,
) -> Result<Report, epsilonica::Error> {
    match command {
        Command::St { expr } => {
            let value = eval_arg(expr, bindings, ctx)?;
            let st = value.st()?;
            Ok(Report {
                command: "st",
                inputs: json!({ "expr": expr, "value": value.to_string() }),
                output: json!({ "st": scalar_json(&st) }),
                truncated: value.is_truncated(),
                human: format!("{st}\n"),
            })
        }
        Command::Leading { expr } => {
            let value = eval_arg(expr, bindings, ctx)?;
            let leading = value.truncate_tlh();
            Ok(Report {
                command: "leading",
                inputs: json!({ "expr": expr, "value": value.to_string() }),
                output: json!({ "leading": number_json(&leading) }),
                truncated: value.is_truncated(),
                human: format!("{leading}\n"),
            })
        }
        Command::Decompose { expr } => {
            let value = eval_arg(expr, bindings, ctx)?;
            let parts = value.decompose()?;
            Ok(Report {
                command: "decompose",
                inputs: json!({ "expr": expr, "value": value.to_string() }),
                output: json!({
                    "order": parts.order.to_string(),
                    "lead": scalar_json(&parts.lead),
                    "residue": number_json(&parts.residue),
                }),
                truncated: value.is_truncated(),
                human: format!(
                    "order: {}\nlead: {}\nresidue: {}\n",
                    parts.order, parts.lead, parts.residue
                ),
            })
        }
        Command::Classify { expr } => {
            let value = eval_arg(expr, bindings, ctx)?;
            let class = value.classify();
            let limited = class.is_limited();
            let limit_word = if limited { "limited" } else { "unlimited" };
            Ok(Report {
                command: "classify",
                inputs: json!({ "expr": expr, "value": value.to_string() }),
                output: json!({ "class": class.to_string(), "limited": limited }),
                truncated: value.is_truncated(),
                human: format!("{class} ({limit_word})\n"),
            })
        }
        Command::Adequal { a, b } => {
            let x = eval_arg(a, bindings, ctx)?;
            let y = eval_arg(b, bindings, ctx)?;
            let verdict = x.adequal(&y)?;
            Ok(Report {
                command: "adequal",
                inputs: json!({ "a": a, "b": b }),
                output: json!({ "adequal": verdict }),
                truncated: x.is_truncated() || y.is_truncated(),
                human: format!("{verdict}\n"),
            })
        }
        Command::Compare { a, b } => {
            let x = eval_arg(a, bindings, ctx)?;
            let y = eval_arg(b, bindings, ctx)?;
            let sign = x.compare(&y)?;
            Ok(Report {
                command: "compare",
                inputs: json!({ "a": a, "b": b }),
                output: json!({ "sign": sign.to_string() }),
                truncated: x.is_truncated() || y.is_truncated(),
                human: format!("{sign}\n"),
            })
        }
        Command::Archimedean(sub) => match sub {
            ArchimedeanCommand::Exceeds { a, b } => {
                let x = eval_arg(a, bindings, ctx)?;
                let y = eval_arg(b, bindings, ctx)?;
                let witness = archimedean::exceeds(&x, &y)?;
                Ok(Report {
                    command: "archimedean exceeds",
                    inputs: json!({ "a": a, "b": b }),
                    output: json!({ "witness": witness }),
                    truncated: x.is_truncated() || y.is_truncated(),
                    human: witness_human(witness),
                })
            }
            ArchimedeanCommand::Lemma { a, b, c } => {
                let x = eval_arg(a, bindings, ctx)?;
                let y = eval_arg(b, bindings, ctx)?;
                let z = eval_arg(c, bindings, ctx)?;
                let witness = archimedean::archimedes_lemma_witness(&x, &y, &z)?;
                Ok(Report {
                    command: "archimedean lemma",
                    inputs: json!({ "a": a, "b": b, "c": c }),
                    output: json!({ "witness": witness }),
                    truncated: x.is_truncated() || y.is_truncated() || z.is_truncated(),
                    human: witness_human(witness),
                })
            }
        },
        Command::Hankel { a, b, c, d } => {
            let aa = eval_arg(a, bindings, ctx)?;
            let bb = eval_arg(b, bindings, ctx)?;
            let cc = eval_arg(c, bindings, ctx)?;
            let dd = eval_arg(d, bindings, ctx)?;
            let verdict = archimedean::hankel_proportion(&aa, &bb, &cc, &dd)?;
            Ok(Report {
                command: "hankel",
                inputs: json!({ "a": a, "b": b, "c": c, "d": d }),
                output: json!({ "proportional": verdict }),
                truncated: false,
                human: format!("{verdict}\n"),
            })
        }
        Command::Derive { expr, at } => {
            let f = ExprTree::parse(expr)?;
            let point = scalar_arg(at, ctx)?;
            let derivative = fermat::adequality_derivative(&f, &point, ctx)?;
            Ok(Report {
                command: "derive",
                inputs: json!({ "expr": expr, "at": scalar_json(&point) }),
                output: json!({ "derivative": scalar_json(&derivative) }),
                truncated: false,
                human: format!("{derivative}\n"),
            })
        }
        Command::Extremum { expr, lo, hi } => {
            let f = ExprTree::parse(expr)?;
            let lo_s = scalar_arg(lo, ctx)?;
            let hi_s = scalar_arg(hi, ctx)?;
            let point = fermat::adequality_extremum(&f, &lo_s, &hi_s, ctx)?;
            Ok(Report {
                command: "extremum",
                inputs: json!({
                    "expr": expr,
                    "lo": scalar_json(&lo_s),
                    "hi": scalar_json(&hi_s),
                }),
                output: json!({ "point": scalar_json(&point) }),
                truncated: false,
                human: format!("{point}\n"),
            })
        }
        Command::Tangent { expr, at } => {
            let f = ExprTree::parse(expr)?;
            let point = scalar_arg(at, ctx)?;
            let line = fermat::tangent_line(&f, &point, ctx)?;
            Ok(Report {
                command: "tangent",
                inputs: json!({ "expr": expr, "at": scalar_json(&point) }),
                output: json!({
                    "slope": scalar_json(&line.slope),
                    "intercept": scalar_json(&line.intercept),
                }),
                truncated: false,
                human: format!("slope: {}\nintercept: {}\n", line.slope, line.intercept),
            })
        }
        Command::Microcont { expr, at, probes } => {
            let f = ExprTree::parse(expr)?;
            let point = scalar_arg(at, ctx)?;
            let probe_values = if probes.is_empty() {
                fermat::default_probes(ctx)
            } else {
                probes
                    .iter()
                    .map(|p| eval_arg(p, bindings, ctx))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let report = fermat::microcontinuous_at(&f, &point, &probe_values, ctx)?;
            let mut human = String::new();
            let mut probe_json = Vec::new();
            for probe in &report.probes {
                match (&probe.st_difference, &probe.failure) {
                    (Some(st), _) => {
                        human.push_str(&format!("probe {}: st(diff) = {}\n", probe.probe, st));
                        probe_json.push(json!({
                            "probe": probe.probe.to_string(),
                            "st_difference": scalar_json(st),
                        }));
                    }
                    (None, Some(failure)) => {
                        human.push_str(&format!("probe {}: {}\n", probe.probe, failure));
                        probe_json.push(json!({
                            "probe": probe.probe.to_string(),
                            "failure": failure,
                        }));
                    }
                    (None, None) => unreachable!("probe carries a value or a failure"),
                }
            }
            human.push_str(&format!("microcontinuous: {}\n", report.microcontinuous));
            Ok(Report {
                command: "microcont",
                inputs: json!({ "expr": expr, "at": scalar_json(&point) }),
                output: json!({
                    "probes": probe_json,
                    "microcontinuous": report.microcontinuous,
                }),
                truncated: false,
                human,
            })
        }
        Command::Weierstrass {
            expr,
            at,
            eps,
            grid,
            samples,
        } => {
            let f = ExprTree::parse(expr)?;
            let point = scalar_arg(at, ctx)?;
            let eps_s = scalar_arg(eps, ctx)?;
            let grid_s = grid
                .iter()
                .map(|g| scalar_arg(g, ctx))
                .collect::<Result<Vec<_>, _>>()?;
            let delta = fermat::weierstrass_probe(&f, &point, &eps_s, &grid_s, *samples, ctx)?;
            let human = match &delta {
                Some(d) => format!("delta = {d}\n"),
                None => "absent\n".to_string(),
            };
            Ok(Report {
                command: "weierstrass",
                inputs: json!({
                    "expr": expr,
                    "at": scalar_json(&point),
                    "eps": scalar_json(&eps_s),
                    "grid": grid_s.iter().map(scalar_json).collect::<Vec<_>>(),
                    "samples": samples,
                }),
                output: json!({ "delta": delta.as_ref().map(scalar_json) }),
                truncated: false,
                human,
            })
        }
        Command::Leibniz(LeibnizCommand::ProductRule { u, v, at }) => {
            let u_expr = ExprTree::parse(u)?;
            let v_expr = ExprTree::parse(v)?;
            let point = scalar_arg(at, ctx)?;
            let report = fermat::product_rule_report(&u_expr, &v_expr, &point, ctx)?;
            Ok(Report {
                command: "leibniz product-rule",
                inputs: json!({ "u": u, "v": v, "at": scalar_json(&point) }),
                output: json!({
                    "lhs_quotient": number_json(&report.lhs_quotient),
                    "residual": number_json(&report.residual),
                    "rhs": scalar_json(&report.rhs),
                    "verdict": report.verdict,
                }),
                truncated: report.lhs_quotient.is_truncated(),
                human: format!(
                    "lhs quotient: {}\nresidual: {}\nrhs: {}\nverdict: {}\n",
                    report.lhs_quotient, report.residual, report.rhs, report.verdict
                ),
            })
        }
        Command::Euler(sub) => euler_command(sub, ctx),
        Command::Cauchy(sub) => cauchy_command(sub, bindings, ctx),
    }
}

fn euler_command(command: &EulerCommand, ctx: Context) -> Result<Report, epsilonica::Error> {
    match command {
        EulerCommand::SineProduct(args) | EulerCommand::Sinh(args) => {
            let hyperbolic = matches!(command, EulerCommand::Sinh(_));
            let run = if hyperbolic {
                euler::sinh_product(args.x, args.k)?
            } else {
                euler::sine_product(args.x, args.k)?
            };
            Ok(Report {
                command: if hyperbolic { "euler sinh" } else { "euler sine-product" },
                inputs: json!({ "x": args.x, "k": args.k }),
                output: json!({
                    "value": run.value,
                    "reference": run.reference,
                    "abs_error": run.abs_error,
                    "tail_bound": run.tail_bound,
                }),
                truncated: false,
                human: format!(
                    "value: {}\nreference: {}\nabs error: {}\ntail bound: {}\n",
                    run.value, run.reference, run.abs_error, run.tail_bound
                ),
            })
        }
        EulerCommand::Exp { x, j, hyperbolic } => {
            let x_s = scalar_arg(x, ctx)?;
            let value = if *hyperbolic {
                euler::sinh_surrogate(&x_s, *j)?
            } else {
                euler::exp_surrogate(&x_s, *j)?
            };
            Ok(Report {
                command: "euler exp",
                inputs: json!({ "x": scalar_json(&x_s), "j": j, "hyperbolic": hyperbolic }),
                output: json!({ "value": scalar_json(&value) }),
                truncated: false,
                human: format!("{value}\n"),
            })
        }
        EulerCommand::FactorIdentity { j, a, b } => {
            let residual = euler::factor_identity_residual(*j, *a, *b)?;
            Ok(Report {
                command: "euler factor-identity",
                inputs: json!({ "j": j, "a": a, "b": b }),
                output: json!({ "residual": residual }),
                truncated: false,
                human: format!("residual: {residual}\n"),
            })
        }
        EulerCommand::CosBound { theta } => {
            let run = euler::cos_replacement_residual(*theta);
            Ok(Report {
                command: "euler cos-bound",
                inputs: json!({ "theta": theta }),
                output: json!({
                    "residual": run.residual,
                    "bound": run.bound,
                    "within_bound": run.within_bound(),
                }),
                truncated: false,
                human: format!(
                    "residual: {}\nbound: {}\nwithin bound: {}\n",
                    run.residual,
                    run.bound,
                    run.within_bound()
                ),
            })
        }
        EulerCommand::Basel { n } => {
            let run = euler::basel_partial(*n, ctx.mode())?;
            Ok(Report {
                command: "euler basel",
                inputs: json!({ "n": n }),
                output: json!({
                    "sum": scalar_json(&run.sum),
                    "target": run.target,
                    "error": run.error,
                }),
                truncated: false,
                human: format!(
                    "sum: {}\ntarget: {}\nerror: {}\n",
                    run.sum, run.target, run.error
                ),
            })
        }
        EulerCommand::Equal { a, b } => {
            let x = parse_number(a, ctx)?;
            let y = parse_number(b, ctx)?;
            let arithmetic = euler::arithmetic_equal(&x, &y)?;
            let geometric = euler::geometric_equal(&x, &y)?;
            Ok(Report {
                command: "euler equal",
                inputs: json!({ "a": a, "b": b }),
                output: json!({ "arithmetic": arithmetic, "geometric": geometric }),
                truncated: x.is_truncated() || y.is_truncated(),
                human: format!("arithmetic: {arithmetic}\ngeometric: {geometric}\n"),
            })
        }
        EulerCommand::Cancel { num, den } => {
            let n = parse_number(num, ctx)?;
            let d = parse_number(den, ctx)?;
            let (ratio, standard) = euler::cancellation_ratio(&n, &d)?;
            Ok(Report {
                command: "euler cancel",
                inputs: json!({ "num": num, "den": den }),
                output: json!({
                    "ratio": number_json(&ratio),
                    "standard": scalar_json(&standard),
                }),
                truncated: ratio.is_truncated(),
                human: format!("ratio: {ratio}\nstandard: {standard}\n"),
            })
        }
    }
}

fn cauchy_command(
    command: &CauchyCommand,
    bindings: &Bindings,
    ctx: Context,
) -> Result<Report, epsilonica::Error> {
    match command {
        CauchyCommand::Delta {
            f,
            a,
            alpha,
            halfwidth,
            tol,
            budget,
        } => {
            let f_expr = ExprTree::parse(f)?;
            let run =
                cauchy::delta_integral_with_budget(&f_expr, *a, *alpha, *halfwidth, *tol, *budget)?;
            Ok(Report {
                command: "cauchy delta",
                inputs: json!({
                    "f": f,
                    "a": a,
                    "alpha": alpha,
                    "halfwidth": halfwidth,
                    "tol": tol,
                }),
                output: json!({
                    "value": run.value,
                    "target": run.target,
                    "abs_error": run.abs_error,
                    "quadrature_evals": run.quadrature_evals,
                    "converged": run.converged,
                }),
                truncated: false,
                human: format!(
                    "value: {}\ntarget: {}\nabs error: {}\nevals: {}\nconverged: {}\n",
                    run.value, run.target, run.abs_error, run.quadrature_evals, run.converged
                ),
            })
        }
        CauchyCommand::Limit { expr } => {
            let u = ExprTree::parse(expr)?;
            let limit = cauchy::limit_via_st(&u, ctx)?;
            Ok(Report {
                command: "cauchy limit",
                inputs: json!({ "expr": expr }),
                output: json!({ "limit": scalar_json(&limit) }),
                truncated: false,
                human: format!("{limit}\n"),
            })
        }
        CauchyCommand::Decompose { expr } => {
            let q = eval_arg(expr, bindings, ctx)?;
            let (standard, infinitesimal) = cauchy::variable_decompose(&q)?;
            Ok(Report {
                command: "cauchy decompose",
                inputs: json!({ "expr": expr, "value": q.to_string() }),
                output: json!({
                    "standard": scalar_json(&standard),
                    "infinitesimal": number_json(&infinitesimal),
                }),
                truncated: q.is_truncated(),
                human: format!("standard: {standard}\ninfinitesimal: {infinitesimal}\n"),
            })
        }
    }
}
