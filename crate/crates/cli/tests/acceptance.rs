//! Acceptance gate: ten numbered criteria, each printing one PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! The criteria pin exact constants, cross-method agreements, symmetry
//! invariances, figure-level sweep anchors, the appendix procedures, a
//! seeded Monte Carlo battery, and the two results that are honestly
//! *not* reproducible at desk scale.

use mct_core::analytic::{self, OneZeroCase, ZeroPattern};
use mct_core::chain;
use mct_core::distributions::Distribution;
use mct_core::mc::{self, SimConfig};
use mct_core::model::{classify, transform_apply, MatrixModel, Transform};
use mct_core::solver::{self, Method};
use mct_core::spectral::{self, RateQuad};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;

fn report(n: u32, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {n:02} PASS: {what}");
    } else {
        println!("criterion {n:02} FAIL: {what}");
        for f in failures {
            println!("    {f}");
        }
        panic!("criterion {n} failed:\n{}", failures.join("\n"));
    }
}

fn exp(rate: f64) -> Distribution {
    Distribution::Exponential { rate }
}

fn konst(value: f64) -> Distribution {
    Distribution::Constant { value }
}

fn iid(d: Distribution) -> MatrixModel {
    MatrixModel::new(d.clone(), d.clone(), d.clone(), d)
}

fn check(failures: &mut Vec<String>, got: f64, want: f64, tol: f64, what: &str) {
    let diff = (got - want).abs();
    if !(diff <= tol) {
        failures.push(format!("{what}: got {got}, want {want}, |diff| = {diff:.3e} > {tol:.0e}"));
    }
}

#[test]
fn criterion_01_exact_constants() {
    let mut f = Vec::new();
    let l = analytic::lambda_iid(&exp(1.0)).unwrap().lambda;
    check(&mut f, l, 407.0 / 228.0, 1e-12, "iid exponential(1)");
    let l = chain::lambda_discrete(&iid(Distribution::DiscreteUniform { m: 1 }))
        .unwrap()
        .lambda;
    check(&mut f, l, 6.0 / 7.0, 1e-12, "chain discrete uniform m=1");
    let l = analytic::lambda_zero_pattern_exp(ZeroPattern::Offdiag, 1.0, 1.0)
        .unwrap()
        .lambda;
    check(&mut f, l, 1.25, 1e-12, "zero off-diagonal unit rates");
    report(
        1,
        "exact constants 407/228, 6/7, 5/4 at their stated tolerances",
        &f,
    );
}

#[test]
fn criterion_02_rational_reductions() {
    use analytic::exact::{self, ratio};
    let mut f = Vec::new();
    let one = ratio(1, 1);

    let got = exact::lambda_diag_offdiag_exp(&one, &one);
    if got != ratio(407, 228) {
        f.push(format!("diag/offdiag at unit rates: {got} != 407/228"));
    }
    for case in [OneZeroCase::DiagSigmaEqMu, OneZeroCase::DiagSigmaEqNu] {
        let got = exact::lambda_one_zero_entry_exp(case, &one, &one);
        if got != ratio(439, 278) {
            f.push(format!("one-zero diagonal case {case:?}: {got} != 439/278"));
        }
    }
    for case in [OneZeroCase::OffdiagNuEqMu, OneZeroCase::OffdiagTauEqMu] {
        let got = exact::lambda_one_zero_entry_exp(case, &one, &one);
        if got != ratio(515, 352) {
            f.push(format!("one-zero off-diagonal case {case:?}: {got} != 515/352"));
        }
    }
    report(
        2,
        "exact rational reductions to 407/228, 439/278, 515/352 at unit rates",
        &f,
    );
}

#[test]
fn criterion_03_spectral_vs_catalog() {
    let mut f = Vec::new();
    let grid = [0.5, 1.0, 1.5, 2.0, 3.0];
    for mu in grid {
        let l = spectral::lambda_pure_exponential(&RateQuad::new(mu, mu, mu, mu).unwrap())
            .unwrap()
            .lambda;
        check(
            &mut f,
            l,
            407.0 / (228.0 * mu),
            1e-10,
            &format!("equal rates mu={mu}"),
        );
    }
    for mu in grid {
        for nu in grid {
            let s = spectral::lambda_pure_exponential(&RateQuad::new(mu, nu, nu, mu).unwrap())
                .unwrap()
                .lambda;
            let c = analytic::lambda_diag_offdiag_exp(mu, nu).unwrap().lambda;
            check(&mut f, s, c, 1e-10, &format!("diag/offdiag ({mu},{nu})"));
        }
    }
    report(
        3,
        "spectral route matches the closed-form catalog on a 5x5 rate grid to 1e-10",
        &f,
    );
}

#[test]
fn criterion_04_symmetry_suite() {
    let mut f = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..50 {
        let r = |rng: &mut ChaCha8Rng| 0.2 + 3.8 * rng.random::<f64>();
        let (m, n, s, t) = (r(&mut rng), r(&mut rng), r(&mut rng), r(&mut rng));
        let lambda = |a, b, c, d| {
            spectral::lambda_pure_exponential(&RateQuad::new(a, b, c, d).unwrap())
                .unwrap()
                .lambda
        };
        let base = lambda(m, n, s, t);
        let exchange = lambda(m, s, n, t);
        let reversal = lambda(t, s, n, m);
        let tol = 1e-10 * (1.0 + base);
        check(&mut f, exchange, base, tol, &format!("quad {i} off-diagonal exchange"));
        check(&mut f, reversal, base, tol, &format!("quad {i} reversal"));
    }

    let discrete = [
        iid(Distribution::DiscreteUniform { m: 1 }),
        iid(Distribution::Bernoulli { p: 0.3 }),
        MatrixModel::new(
            Distribution::DiscreteUniform { m: 2 },
            Distribution::Bernoulli { p: 0.7 },
            konst(1.0),
            Distribution::Bernoulli { p: 0.2 },
        ),
        MatrixModel::new(
            Distribution::Geometric { p: 0.4 },
            konst(0.0),
            konst(2.0),
            Distribution::DiscreteUniform { m: 1 },
        ),
        MatrixModel::new(
            Distribution::Bernoulli { p: 0.5 },
            Distribution::DiscreteUniform { m: 3 },
            Distribution::Bernoulli { p: 0.9 },
            konst(1.0),
        ),
    ];
    for (i, m) in discrete.iter().enumerate() {
        let base = chain::lambda_discrete(m).unwrap().lambda;
        for g in Transform::ALL {
            let l = chain::lambda_discrete(&transform_apply(m, g)).unwrap().lambda;
            check(&mut f, l, base, 1e-12, &format!("discrete model {i} under {g}"));
        }
    }
    report(
        4,
        "lambda invariant under the symmetry group (spectral 50 quads at 1e-10, chain 5 models at 1e-12)",
        &f,
    );
}

#[test]
fn criterion_05_quadrature_vs_closed_form() {
    let mut f = Vec::new();
    for mu in [0.5, 1.0, 2.0, 3.0, 4.0] {
        for c in [0.0, 0.5, 1.0, 2.0, 3.0] {
            let quad = analytic::lambda_zero_row_general(&exp(mu), c).unwrap().lambda;
            let closed = analytic::lambda_zero_row_exp_const(mu, c).unwrap().lambda;
            check(&mut f, quad, closed, 1e-8, &format!("(mu={mu}, c={c})"));
        }
    }
    report(
        5,
        "adaptive quadrature matches the arctan closed form on a 5x5 (mu,c) grid incl. c=0 to 1e-8",
        &f,
    );
}

/// Run the real binary's sweep and return lambda at the requested grid
/// value of the varied parameter.
fn sweep_value(case: &str, vary: &str, from: &str, to: &str, points: &str, fixed: &str, at: &str) -> f64 {
    let out = Command::new(env!("CARGO_BIN_EXE_mct"))
        .args([
            "sweep", "--case", case, "--vary", vary, "--from", from, "--to", to, "--points",
            points, "--fixed", fixed,
        ])
        .output()
        .expect("failed to run mct sweep");
    assert!(out.status.success(), "sweep exited nonzero");
    let text = String::from_utf8(out.stdout).unwrap();
    let prefix = format!("{at},");
    text.lines()
        .find(|l| l.starts_with(&prefix))
        .unwrap_or_else(|| panic!("no row at {at} in:\n{text}"))
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn criterion_06_figure_reproduction() {
    let mut f = Vec::new();
    let l = sweep_value("ConstDiagOneRandom", "c", "0", "3", "61", "mu=1", "1.000000");
    check(&mut f, l, 1.150000, 1e-5, "one-random-diagonal curve, mu=1 at c=1");
    let l = sweep_value("ConstDiagOneRandom", "c", "0", "3", "61", "mu=2", "1.000000");
    check(&mut f, l, 1.002500, 1e-5, "one-random-diagonal curve, mu=2 at c=1");
    let l = sweep_value("ZeroRowGeneral", "c", "0", "2", "21", "mu=1", "1.000000");
    // The published curve value at c=1 is 1.07361 (4 figure decimals);
    // the independently computed reference is 1.0736121868.
    check(&mut f, l, 1.07361, 1e-5, "zero-row exponential curve at c=1 (figure value)");
    check(&mut f, l, 1.0736121868, 1e-6, "zero-row exponential curve at c=1 (reference)");
    report(
        6,
        "sweep CSV reproduces the published curve anchors at 1e-5",
        &f,
    );
}

#[test]
fn criterion_07_formula_vs_chain_oracles() {
    let mut f = Vec::new();
    for k in 1..=9 {
        let p = k as f64 / 10.0;
        let formula = analytic::lambda_iid(&Distribution::Bernoulli { p }).unwrap().lambda;
        let chain_l = chain::lambda_discrete(&iid(Distribution::Bernoulli { p }))
            .unwrap()
            .lambda;
        check(&mut f, formula, chain_l, 1e-12, &format!("bernoulli p={p}"));
    }
    for k in 1..=8 {
        let p = k as f64 / 10.0;
        let formula = analytic::lambda_iid(&Distribution::Geometric { p }).unwrap().lambda;
        let chain_l = chain::lambda_discrete(&iid(Distribution::Geometric { p }))
            .unwrap()
            .lambda;
        check(&mut f, formula, chain_l, 1e-6, &format!("geometric p={p}"));
    }
    let du2 = chain::lambda_discrete(&iid(Distribution::DiscreteUniform { m: 2 }))
        .unwrap()
        .lambda;
    check(&mut f, du2 / 2.0, 0.803, 5e-4, "discrete uniform m=2, per-unit-support rate");
    report(
        7,
        "closed forms match the exact chain (Bernoulli 1e-12, geometric 1e-6, m=2 vs 0.803)",
        &f,
    );
}

#[test]
fn criterion_08_appendix_procedures() {
    let mut f = Vec::new();

    for (mu, c) in [(1.0, 1.0), (2.0, 1.0), (0.5, 2.0)] {
        let it = analytic::fixed_point_ab(mu, c, 1e-14).unwrap();
        let (a, b) = analytic::fixed_point_closed_form(mu, c).unwrap();
        check(&mut f, it.a, a, 1e-12, &format!("fixed point a at ({mu},{c})"));
        check(&mut f, it.b, b, 1e-12, &format!("fixed point b at ({mu},{c})"));
    }

    let lambda = analytic::lambda_const_diag_one_random(1.0, 1.0).unwrap().lambda;
    let inc = analytic::increment_distribution_const_diag(1.0, 1.0).unwrap();
    check(&mut f, inc.mean, lambda, 1e-12, "increment mean equals lambda");
    let by_quad = inc.mean_by_quadrature().unwrap();
    check(&mut f, by_quad, lambda, 1e-8, "increment mean by quadrature");
    let atom = inc.atom.map(|(_, mass)| mass).unwrap_or(0.0);
    check(&mut f, atom, 0.189239981085, 1e-10, "atom mass at t=c");

    // Iterating the zero-row increment recursion from zero converges to
    // the closed-form limit at the stated geometric rate.
    let (mu, c, n) = (1.0, 1.0, 201usize);
    let closed = analytic::increment_distribution_zero_row(&exp(mu), c).unwrap();
    let g_max = {
        let fc2 = 1.0 - (-mu * c / 2.0).exp();
        fc2 * fc2
    };
    check(&mut f, g_max, 0.1548181217, 1e-10, "contraction factor G_max");
    for k in (2..=30u32).step_by(4) {
        let iter = analytic::zero_row_increment_iterate(&exp(mu), c, n, k);
        let sup_gap = iter
            .iter()
            .enumerate()
            .map(|(i, &v)| (v - closed.cdf(c * i as f64 / (n - 1) as f64)).abs())
            .fold(0.0_f64, f64::max);
        let bound = g_max.powi(k as i32 / 2);
        if !(sup_gap < bound) {
            f.push(format!("k={k}: sup gap {sup_gap:.3e} not below bound {bound:.3e}"));
        }
    }
    report(
        8,
        "fixed point matches closed form (1e-12); increment mean equals lambda (1e-8); recursion converges at rate G_max^(k/2)",
        &f,
    );
}

#[test]
fn criterion_09_monte_carlo_battery() {
    let models: Vec<(&str, MatrixModel)> = vec![
        ("iid exponential(1)", iid(exp(1.0))),
        (
            "diag/offdiag exponential (1,2)",
            MatrixModel::new(exp(1.0), exp(2.0), exp(2.0), exp(1.0)),
        ),
        (
            "zero off-diagonal (1,2)",
            MatrixModel::new(exp(1.0), konst(0.0), konst(0.0), exp(2.0)),
        ),
        (
            "zero diagonal (1,2)",
            MatrixModel::new(konst(0.0), exp(1.0), exp(2.0), konst(0.0)),
        ),
        (
            "zero row (1,2)",
            MatrixModel::new(exp(1.0), exp(2.0), konst(0.0), konst(0.0)),
        ),
        (
            "one-zero diagonal sigma=mu (1,2)",
            MatrixModel::new(exp(1.0), exp(2.0), exp(1.0), konst(0.0)),
        ),
        (
            "one-zero off-diagonal nu=mu (1,2)",
            MatrixModel::new(exp(1.0), exp(1.0), konst(0.0), exp(2.0)),
        ),
        (
            "constant diagonal, one random (1,1)",
            MatrixModel::new(exp(1.0), konst(0.0), konst(0.0), konst(1.0)),
        ),
        (
            "zero row, constant diagonal (1,1)",
            MatrixModel::new(konst(1.0), exp(1.0), konst(0.0), konst(0.0)),
        ),
        (
            "three constants, one exponential (1,1)",
            MatrixModel::new(exp(1.0), konst(1.0), konst(1.0), konst(1.0)),
        ),
        (
            "pure exponential (1,2,3,4)",
            MatrixModel::new(exp(1.0), exp(2.0), exp(3.0), exp(4.0)),
        ),
        ("iid bernoulli(1/2)", iid(Distribution::Bernoulli { p: 0.5 })),
        (
            "iid discrete uniform{0,1}",
            iid(Distribution::DiscreteUniform { m: 1 }),
        ),
    ];
    let cfg = SimConfig {
        steps: 200_000,
        replications: 32,
        seed: 42,
        renorm_period: 64,
    };
    let mut lines = Vec::new();
    let mut passes = 0u32;
    for (name, m) in &models {
        let cmp = mc::compare(m, &cfg).unwrap();
        let ok = cmp.z.abs() <= 4.0;
        passes += u32::from(ok);
        lines.push(format!(
            "    {} {name}: exact {:.6} ({}), mc {:.6} +- {:.6}, z = {:+.2}",
            if ok { "ok  " } else { "MISS" },
            cmp.exact.rate.lambda,
            cmp.exact.method,
            cmp.estimate.lambda_hat,
            cmp.estimate.stderr,
            cmp.z
        ));
    }
    for l in &lines {
        println!("{l}");
    }
    let f: Vec<String> = if passes >= 12 {
        Vec::new()
    } else {
        vec![format!(
            "only {passes} of 13 models within |z| <= 4 (need >= 12):\n{}",
            lines.join("\n")
        )]
    };
    report(
        9,
        &format!("Monte Carlo battery: {passes} of 13 seeded models within |z| <= 4 (need >= 12)"),
        &f,
    );
}

#[test]
fn criterion_10_honest_exclusions() {
    let mut f = Vec::new();

    // The uniform[0,1] constant is tabulated to three decimals only; the
    // artifact must mark it low-precision and may only claim statistical
    // agreement at the 2e-3 level.
    let sol = solver::solve(&iid(Distribution::Uniform { lo: 0.0, hi: 1.0 }))
        .unwrap()
        .expect("uniform route");
    if sol.method != Method::TabulatedConstant || !sol.rate.low_precision {
        f.push(format!(
            "uniform[0,1] must be a low-precision tabulated constant, got {:?} via {}",
            sol.rate, sol.method
        ));
    }
    let est = mc::simulate(&iid(Distribution::Uniform { lo: 0.0, hi: 1.0 }), &SimConfig::default())
        .unwrap();
    check(&mut f, est.lambda_hat, 0.719, 2e-3, "uniform[0,1] MC vs 3-decimal constant");

    // Larger systems (the published n=3 value 0.979) are out of scope:
    // the model schema is strictly 2x2 and rejects anything bigger.
    let three = r#"{"entries":{
        "a11":{"dist":"bernoulli","p":0.5},
        "a12":{"dist":"bernoulli","p":0.5},
        "a13":{"dist":"bernoulli","p":0.5},
        "a21":{"dist":"bernoulli","p":0.5},
        "a22":{"dist":"bernoulli","p":0.5}}}"#;
    match MatrixModel::from_json_str(three) {
        Err(e) if e.to_string().contains("a13") => {}
        other => f.push(format!("3x3 input must be rejected by name, got {other:?}")),
    }

    // There is no exact uniform route pretending to more precision: the
    // classification is honest about which models have no closed form.
    let mixed = MatrixModel::new(
        exp(1.0),
        Distribution::Uniform { lo: 0.0, hi: 1.0 },
        exp(1.0),
        exp(1.0),
    );
    if classify(&mixed).family.name() != "NoClosedForm" {
        f.push("mixed uniform/exponential model must classify as NoClosedForm".into());
    }
    if solver::solve(&mixed).unwrap().is_some() {
        f.push("mixed uniform/exponential model must have no exact route".into());
    }

    report(
        10,
        "exclusions are honest: uniform[0,1] only to 3 decimals (2e-3 statistical), larger systems rejected",
        &f,
    );
}
