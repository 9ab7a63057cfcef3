//! `mct`: mean cycle time of stochastic 2×2 max-plus linear systems.
//!
//! Five verbs over JSON model files (or inline JSON):
//!
//! * `analytic`  — exact λ when a route exists (exit 3 otherwise),
//! * `simulate`  — Monte Carlo estimate with replication detail,
//! * `compare`   — exact vs simulated, studentized; exit 1 on |z| > 4,
//! * `sweep`     — CSV of λ along one parameter of a closed-form family,
//! * `table`     — reference values recomputed with cross-route checks.
//!
//! Exit codes: 0 success, 1 cross-check failure, 2 usage/input error,
//! 3 no exact route (informational).

use clap::{Args, Parser, Subcommand};
use mct_core::analytic::{self, Rate, ZeroPattern};
use mct_core::chain;
use mct_core::distributions::Distribution;
use mct_core::mc::{self, CompareError, SimConfig};
use mct_core::model::MatrixModel;
use mct_core::solver::{self, ExactSolution};
use mct_core::spectral::{self, RateQuad};
use num::BigRational;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mct",
    version,
    about = "Mean cycle time of stochastic 2x2 max-plus linear systems"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the exact mean cycle time of a model
    Analytic {
        /// Path to a model JSON file, inline JSON, or '-' for stdin
        model: String,
    },
    /// Estimate the mean cycle time by Monte Carlo simulation
    Simulate {
        /// Path to a model JSON file, inline JSON, or '-' for stdin
        model: String,
        #[command(flatten)]
        sim: SimArgs,
        /// Write per-replication estimates to a CSV file
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Cross-check the exact value against a simulation
    Compare {
        /// Path to a model JSON file, inline JSON, or '-' for stdin
        model: String,
        #[command(flatten)]
        sim: SimArgs,
        /// Shift the exact value before comparing (self-test of the
        /// cross-check's power to detect a wrong formula)
        #[arg(long, default_value_t = 0.0)]
        bias: f64,
    },
    /// Tabulate lambda along one parameter of a closed-form family (CSV)
    Sweep {
        /// Family name (see --case help or the README)
        #[arg(long)]
        case: String,
        /// Parameter to vary
        #[arg(long)]
        vary: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 21)]
        points: usize,
        /// Fix another parameter, as name=value (repeatable)
        #[arg(long = "fixed", value_name = "NAME=VALUE")]
        fixed: Vec<String>,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Recompute the reference table of known cases with cross-checks
    Table {
        #[command(flatten)]
        sim: SimArgs,
    },
}

#[derive(Args)]
struct SimArgs {
    /// Steps per replication
    #[arg(long, default_value_t = 200_000)]
    steps: u64,
    /// Independent replications
    #[arg(long, default_value_t = 32)]
    reps: u32,
    /// Base RNG seed (replication r uses stream r)
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Renormalization period in steps
    #[arg(long, default_value_t = 64)]
    renorm: u64,
}

impl SimArgs {
    fn config(&self) -> SimConfig {
        SimConfig {
            steps: self.steps,
            replications: self.reps,
            seed: self.seed,
            renorm_period: self.renorm,
        }
    }
}

/// A failure destined for stderr with a specific exit code.
struct Failure {
    code: u8,
    message: String,
}

fn input_err(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn no_route(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Analytic { model } => cmd_analytic(&load_model(&model)?),
        Cmd::Simulate { model, sim, csv } => {
            cmd_simulate(&load_model(&model)?, &sim.config(), csv.as_deref())
        }
        Cmd::Compare { model, sim, bias } => {
            cmd_compare(&load_model(&model)?, &sim.config(), bias)
        }
        Cmd::Sweep {
            case,
            vary,
            from,
            to,
            points,
            fixed,
            output,
        } => cmd_sweep(&case, &vary, from, to, points, &fixed, output.as_deref()),
        Cmd::Table { sim } => cmd_table(&sim.config()),
    }
}

/// Accept a path, inline JSON (first non-space byte `{`), or `-`.
fn load_model(arg: &str) -> Result<MatrixModel, Failure> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| input_err(format!("reading stdin: {e}")))?;
        buf
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| input_err(format!("reading {arg}: {e}")))?
    };
    MatrixModel::from_json_str(&text).map_err(|e| input_err(e.to_string()))
}

fn format_lambda(rate: &Rate, rational: Option<&BigRational>) -> String {
    let mut s = format!("{:.6}", rate.lambda);
    if let Some(q) = rational {
        s.push_str(&format!(" (= {q})"));
    }
    if rate.low_precision {
        s.push_str(" (tabulated, 3 decimals)");
    }
    s
}

fn print_solution(sol: &ExactSolution) {
    let params = sol.case.family.params_display();
    if params.is_empty() {
        println!("family: {}", sol.case.family.name());
    } else {
        println!("family: {} ({params})", sol.case.family.name());
    }
    println!("transform: {}", sol.case.transform);
    println!("method: {}", sol.method);
    let rational = solver::exact_rational(&sol.case);
    println!("lambda = {}", format_lambda(&sol.rate, rational.as_ref()));
}

fn cmd_analytic(m: &MatrixModel) -> Result<u8, Failure> {
    match solver::solve(m).map_err(|e| input_err(e.to_string()))? {
        Some(sol) => {
            print_solution(&sol);
            Ok(0)
        }
        None => Err(no_route(
            "no exact route for this model; run 'mct simulate' to estimate lambda",
        )),
    }
}

fn cmd_simulate(
    m: &MatrixModel,
    cfg: &SimConfig,
    csv: Option<&std::path::Path>,
) -> Result<u8, Failure> {
    let est = mc::simulate(m, cfg).map_err(|e| input_err(e.to_string()))?;
    println!("lambda_hat = {:.6}", est.lambda_hat);
    println!("stderr = {:.6}", est.stderr);
    println!(
        "steps = {}, replications = {}, seed = {}",
        est.steps, est.replications, est.seed
    );
    if let Some(path) = csv {
        let mut out = String::from("replication,lambda_hat\n");
        for (r, v) in est.per_replication.iter().enumerate() {
            out.push_str(&format!("{r},{v:.9}\n"));
        }
        fs::write(path, out)
            .map_err(|e| input_err(format!("writing {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
    }
    Ok(0)
}

fn cmd_compare(m: &MatrixModel, cfg: &SimConfig, bias: f64) -> Result<u8, Failure> {
    let cmp = match mc::compare_biased(m, cfg, bias) {
        Ok(cmp) => cmp,
        Err(CompareError::NoExactRoute) => {
            return Err(no_route(
                "no exact route for this model; run 'mct simulate' to estimate lambda",
            ))
        }
        Err(e) => return Err(input_err(e.to_string())),
    };
    print_solution(&cmp.exact);
    if bias != 0.0 {
        println!("bias = {bias} (deliberate, self-test)");
    }
    println!("lambda_hat = {:.6}", cmp.estimate.lambda_hat);
    println!("stderr = {:.6}", cmp.estimate.stderr);
    println!("z = {:.2}", cmp.z);
    if cmp.z.abs() > 4.0 {
        println!("cross-check FAILED: |z| > 4");
        Ok(1)
    } else {
        println!("cross-check OK: |z| <= 4");
        Ok(0)
    }
}

const SWEEP_CASES: &[(&str, &[&str])] = &[
    ("ConstDiagOneRandom", &["mu", "c"]),
    ("ZeroRowConstDiag", &["nu", "c"]),
    ("ZeroRowGeneral", &["mu", "c"]),
    ("ThreeConstSymmetric", &["mu", "c"]),
    ("DiagOffdiagExponential", &["mu", "nu"]),
    ("ZeroOffdiag", &["mu", "tau"]),
    ("ZeroDiag", &["nu", "sigma"]),
    ("ZeroRow", &["mu", "nu"]),
    ("IidExponential", &["mu"]),
];

fn sweep_lambda(case: &str, get: impl Fn(&str) -> f64) -> Result<Rate, analytic::AnalyticError> {
    match case {
        "ConstDiagOneRandom" => analytic::lambda_const_diag_one_random(get("mu"), get("c")),
        "ZeroRowConstDiag" => analytic::lambda_zero_row_const_diag(get("nu"), get("c")),
        "ZeroRowGeneral" => analytic::lambda_zero_row_exp_const(get("mu"), get("c")),
        "ThreeConstSymmetric" => analytic::lambda_three_const_symmetric(get("mu"), get("c")),
        "DiagOffdiagExponential" => analytic::lambda_diag_offdiag_exp(get("mu"), get("nu")),
        "ZeroOffdiag" => {
            analytic::lambda_zero_pattern_exp(ZeroPattern::Offdiag, get("mu"), get("tau"))
        }
        "ZeroDiag" => {
            analytic::lambda_zero_pattern_exp(ZeroPattern::Diag, get("nu"), get("sigma"))
        }
        "ZeroRow" => analytic::lambda_zero_pattern_exp(ZeroPattern::Row, get("mu"), get("nu")),
        "IidExponential" => analytic::lambda_iid(&Distribution::Exponential { rate: get("mu") }),
        _ => unreachable!("case validated before evaluation"),
    }
}

fn cmd_sweep(
    case: &str,
    vary: &str,
    from: f64,
    to: f64,
    points: usize,
    fixed: &[String],
    output: Option<&std::path::Path>,
) -> Result<u8, Failure> {
    let params = SWEEP_CASES
        .iter()
        .find(|(name, _)| *name == case)
        .map(|(_, params)| *params)
        .ok_or_else(|| {
            let known: Vec<&str> = SWEEP_CASES.iter().map(|(n, _)| *n).collect();
            input_err(format!(
                "unknown case '{case}'; known cases: {}",
                known.join(", ")
            ))
        })?;
    if !params.contains(&vary) {
        return Err(input_err(format!(
            "case {case} has no parameter '{vary}' (parameters: {})",
            params.join(", ")
        )));
    }
    if !from.is_finite() || !to.is_finite() || from == to {
        return Err(input_err(format!(
            "--from and --to must be finite and distinct (got {from} and {to})"
        )));
    }
    if points < 2 {
        return Err(input_err(format!("--points must be at least 2 (got {points})")));
    }

    let mut fixed_vals: Vec<(String, f64)> = Vec::new();
    for spec in fixed {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| input_err(format!("--fixed expects NAME=VALUE, got '{spec}'")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| input_err(format!("--fixed {name}: '{value}' is not a number")))?;
        if !params.contains(&name) {
            return Err(input_err(format!(
                "case {case} has no parameter '{name}' (parameters: {})",
                params.join(", ")
            )));
        }
        if name == vary {
            return Err(input_err(format!(
                "parameter '{name}' is being varied and cannot also be fixed"
            )));
        }
        fixed_vals.push((name.to_string(), value));
    }

    let mut rows = String::from("param,lambda\n");
    for i in 0..points {
        let x = from + (to - from) * i as f64 / (points - 1) as f64;
        let get = |name: &str| -> f64 {
            if name == vary {
                return x;
            }
            fixed_vals
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, v)| *v)
                .unwrap_or(1.0)
        };
        let rate = sweep_lambda(case, get)
            .map_err(|e| input_err(format!("at {vary} = {x}: {e}")))?;
        rows.push_str(&format!("{x:.6},{:.9}\n", rate.lambda));
    }

    match output {
        Some(path) => {
            fs::write(path, rows)
                .map_err(|e| input_err(format!("writing {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            std::io::stdout()
                .write_all(rows.as_bytes())
                .map_err(|e| input_err(format!("writing stdout: {e}")))?;
        }
    }
    Ok(0)
}

struct TableRow {
    case: &'static str,
    lambda: f64,
    reference: String,
    check: Result<String, String>,
}

fn table_rows(cfg: &SimConfig) -> Result<Vec<TableRow>, Failure> {
    let err = |e: &dyn std::fmt::Display| input_err(e.to_string());
    let mut rows = Vec::new();

    let iid = |d: Distribution| MatrixModel::new(d.clone(), d.clone(), d.clone(), d);

    // Discrete uniform on {0, 1}: exact chain against the known rational.
    let du1 = chain::lambda_discrete(&iid(Distribution::DiscreteUniform { m: 1 }))
        .map_err(|e| err(&e))?
        .lambda;
    let diff = (du1 - 6.0 / 7.0).abs();
    rows.push(TableRow {
        case: "iid DiscreteUniform{0,1}",
        lambda: du1,
        reference: "6/7".into(),
        check: if diff <= 1e-12 {
            Ok(format!("chain vs 6/7, diff {diff:.1e}"))
        } else {
            Err(format!("chain vs 6/7, diff {diff:.1e} > 1e-12"))
        },
    });

    // Discrete uniform on {0, 1, 2}: the published constant 0.803 is the
    // per-unit-support rate, i.e. lambda/2 in this parametrization.
    let du2 = chain::lambda_discrete(&iid(Distribution::DiscreteUniform { m: 2 }))
        .map_err(|e| err(&e))?
        .lambda;
    let diff = (du2 / 2.0 - 0.803).abs();
    rows.push(TableRow {
        case: "iid DiscreteUniform{0,1,2}",
        lambda: du2,
        reference: "2 x 0.803".into(),
        check: if diff <= 5e-4 {
            Ok(format!("lambda/2 vs 0.803, diff {diff:.1e}"))
        } else {
            Err(format!("lambda/2 vs 0.803, diff {diff:.1e} > 5e-4"))
        },
    });

    // Uniform[0,1]: tabulated 3-decimal constant against a fresh MC run.
    let uni = iid(Distribution::Uniform { lo: 0.0, hi: 1.0 });
    let est = mc::simulate(&uni, cfg).map_err(|e| err(&e))?;
    let diff = (est.lambda_hat - 0.719).abs();
    rows.push(TableRow {
        case: "iid Uniform[0,1]",
        lambda: 0.719,
        reference: "0.719 (3 d.p.)".into(),
        check: if diff <= 2e-3 {
            Ok(format!("MC {:.4}, diff {diff:.1e}", est.lambda_hat))
        } else {
            Err(format!(
                "MC {:.4}, diff {diff:.1e} > 2e-3",
                est.lambda_hat
            ))
        },
    });

    // Bernoulli(1/2): closed form against the exact chain.
    let bern = Distribution::Bernoulli { p: 0.5 };
    let formula = analytic::lambda_iid(&bern).map_err(|e| err(&e))?.lambda;
    let chain_l = chain::lambda_discrete(&iid(bern)).map_err(|e| err(&e))?.lambda;
    let diff = (formula - chain_l).abs();
    rows.push(TableRow {
        case: "iid Bernoulli(1/2)",
        lambda: formula,
        reference: "6/7".into(),
        check: if diff <= 1e-12 && (formula - 6.0 / 7.0).abs() <= 1e-12 {
            Ok(format!("formula vs chain, diff {diff:.1e}"))
        } else {
            Err(format!("formula vs chain, diff {diff:.1e} > 1e-12"))
        },
    });

    // Geometric(1/2): closed form against the truncated chain.
    let geo = Distribution::Geometric { p: 0.5 };
    let formula = analytic::lambda_iid(&geo).map_err(|e| err(&e))?.lambda;
    let chain_l = chain::lambda_discrete(&iid(geo)).map_err(|e| err(&e))?.lambda;
    let diff = (formula - chain_l).abs();
    let rational = analytic::exact::lambda_iid_geometric(&analytic::exact::ratio(1, 2));
    rows.push(TableRow {
        case: "iid Geometric(1/2)",
        lambda: formula,
        reference: rational.to_string(),
        check: if diff <= 1e-6 {
            Ok(format!("formula vs chain, diff {diff:.1e}"))
        } else {
            Err(format!("formula vs chain, diff {diff:.1e} > 1e-6"))
        },
    });

    // iid exponential: closed form against the spectral route.
    let closed = analytic::lambda_iid(&Distribution::Exponential { rate: 1.0 })
        .map_err(|e| err(&e))?
        .lambda;
    let spectral_l =
        spectral::lambda_pure_exponential(&RateQuad::new(1.0, 1.0, 1.0, 1.0).map_err(|e| err(&e))?)
            .map_err(|e| err(&e))?
            .lambda;
    let diff = (closed - spectral_l).abs();
    rows.push(TableRow {
        case: "iid Exponential(1)",
        lambda: closed,
        reference: "407/228".into(),
        check: if diff <= 1e-10 {
            Ok(format!("closed form vs spectral, diff {diff:.1e}"))
        } else {
            Err(format!("closed form vs spectral, diff {diff:.1e} > 1e-10"))
        },
    });

    // Two different zero patterns share the value 5/4 at unit rates.
    let off = analytic::lambda_zero_pattern_exp(ZeroPattern::Offdiag, 1.0, 1.0)
        .map_err(|e| err(&e))?
        .lambda;
    let diag = analytic::lambda_zero_pattern_exp(ZeroPattern::Diag, 1.0, 1.0)
        .map_err(|e| err(&e))?
        .lambda;
    let diff = (off - diag).abs().max((off - 1.25).abs());
    rows.push(TableRow {
        case: "[[Exp,0],[0,Exp]] & [[0,Exp],[Exp,0]]",
        lambda: off,
        reference: "5/4".into(),
        check: if diff <= 1e-12 {
            Ok(format!("two patterns vs 5/4, diff {diff:.1e}"))
        } else {
            Err(format!("two patterns vs 5/4, diff {diff:.1e} > 1e-12"))
        },
    });

    Ok(rows)
}

fn cmd_table(cfg: &SimConfig) -> Result<u8, Failure> {
    let rows = table_rows(cfg)?;
    println!(
        "{:<38} {:>10}  {:<16} {}",
        "case", "lambda", "reference", "check"
    );
    let mut failures = 0u32;
    for row in &rows {
        let check = match &row.check {
            Ok(msg) => format!("ok ({msg})"),
            Err(msg) => {
                failures += 1;
                format!("FAIL ({msg})")
            }
        };
        println!(
            "{:<38} {:>10.6}  {:<16} {}",
            row.case, row.lambda, row.reference, check
        );
    }
    if failures == 0 {
        println!("all cross-checks passed");
        Ok(0)
    } else {
        println!("{failures} cross-check(s) FAILED");
        Ok(1)
    }
}
