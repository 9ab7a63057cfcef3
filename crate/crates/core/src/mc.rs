//! Monte Carlo estimation of the mean cycle time, and the statistical
//! cross-check of simulated against exact values.
//!
//! A replication iterates `z(k) = A(k) ⊗ z(k−1)` from `z(0) = (0, 0)`
//! with fresh independent entry draws each step, renormalizing
//! periodically (subtracting `max(x, y)` and accumulating it into a
//! shift) so the state never overflows.  The estimate is
//! `λ̂ = (shift + max(x, y)) / steps`, averaged over independent
//! replications; replication `r` uses the stream `r` of a counter-based
//! generator seeded once, so runs are reproducible regardless of thread
//! scheduling.

use crate::model::MatrixModel;
use crate::solver::{self, ExactSolution, SolverError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum McError {
    #[error("invalid simulation config: {what}")]
    BadConfig { what: String },
    #[error("trajectory became non-finite by step {step}")]
    NonFinite { step: u64 },
}

/// Simulation parameters.
#[derive(Clone, Copy, Debug)]
pub struct SimConfig {
    /// Steps per replication.
    pub steps: u64,
    /// Independent replications (each on its own RNG stream).
    pub replications: u32,
    /// Base seed shared by all replications.
    pub seed: u64,
    /// Renormalize the state every this many steps.
    pub renorm_period: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            steps: 200_000,
            replications: 32,
            seed: 42,
            renorm_period: 64,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), McError> {
        if self.steps < 1000 {
            return Err(McError::BadConfig {
                what: format!("steps = {} (need at least 1000)", self.steps),
            });
        }
        if self.replications < 2 {
            return Err(McError::BadConfig {
                what: format!(
                    "replications = {} (need at least 2 for a standard error)",
                    self.replications
                ),
            });
        }
        if self.renorm_period == 0 {
            return Err(McError::BadConfig {
                what: "renorm_period = 0 (must be positive)".into(),
            });
        }
        Ok(())
    }
}

/// A Monte Carlo estimate with its replication-level detail.
#[derive(Clone, Debug)]
pub struct Estimate {
    /// Mean of the per-replication estimates.
    pub lambda_hat: f64,
    /// Standard error of the mean across replications.
    pub stderr: f64,
    pub per_replication: Vec<f64>,
    pub steps: u64,
    pub replications: u32,
    pub seed: u64,
}

/// Optional thread pool honoring the `MCT_THREADS` environment variable.
fn thread_pool() -> Option<rayon::ThreadPool> {
    let n: usize = std::env::var("MCT_THREADS").ok()?.parse().ok()?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build()
        .ok()
}

fn run_replication(m: &MatrixModel, cfg: &SimConfig, rep: u32) -> Result<f64, McError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(u64::from(rep));
    let [a11, a12, a21, a22] = m.entries_array();

    let (mut x, mut y) = (0.0_f64, 0.0_f64);
    let mut shift = 0.0_f64;
    let mut step = 0u64;
    while step < cfg.steps {
        let block = cfg.renorm_period.min(cfg.steps - step);
        for _ in 0..block {
            let nx = (a11.sample(&mut rng) + x).max(a12.sample(&mut rng) + y);
            let ny = (a21.sample(&mut rng) + x).max(a22.sample(&mut rng) + y);
            x = nx;
            y = ny;
        }
        step += block;
        let m = x.max(y);
        if !m.is_finite() {
            return Err(McError::NonFinite { step });
        }
        x -= m;
        y -= m;
        shift += m;
    }
    Ok((shift + x.max(y)) / cfg.steps as f64)
}

/// Estimate the mean cycle time by simulation.
pub fn simulate(m: &MatrixModel, cfg: &SimConfig) -> Result<Estimate, McError> {
    cfg.validate()?;
    let collect = || {
        (0..cfg.replications)
            .into_par_iter()
            .map(|rep| run_replication(m, cfg, rep))
            .collect::<Result<Vec<f64>, McError>>()
    };
    let per_replication = match thread_pool() {
        Some(pool) => pool.install(collect),
        None => collect(),
    }?;

    let n = per_replication.len() as f64;
    let mean = per_replication.iter().sum::<f64>() / n;
    let var = per_replication
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / (n - 1.0);
    Ok(Estimate {
        lambda_hat: mean,
        stderr: (var / n).sqrt(),
        per_replication,
        steps: cfg.steps,
        replications: cfg.replications,
        seed: cfg.seed,
    })
}

#[derive(Debug, Error)]
pub enum CompareError {
    /// The model has no exact route; there is nothing to compare against.
    #[error("model has no exact route to compare against")]
    NoExactRoute,
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Mc(#[from] McError),
}

/// An exact value side by side with its Monte Carlo estimate.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub exact: ExactSolution,
    pub estimate: Estimate,
    /// Studentized discrepancy `(λ̂ − λ) / stderr`.
    pub z: f64,
}

/// Solve the model exactly, simulate it, and studentize the discrepancy.
pub fn compare(m: &MatrixModel, cfg: &SimConfig) -> Result<Comparison, CompareError> {
    compare_biased(m, cfg, 0.0)
}

/// [`compare`] against a deliberately shifted exact value.  With a
/// nonzero `bias` the z-score must blow up; this is the self-test that
/// the comparison has the power to detect a wrong exact value.
pub fn compare_biased(
    m: &MatrixModel,
    cfg: &SimConfig,
    bias: f64,
) -> Result<Comparison, CompareError> {
    let exact = solver::solve(m)?.ok_or(CompareError::NoExactRoute)?;
    let estimate = simulate(m, cfg)?;
    let diff = estimate.lambda_hat - (exact.rate.lambda + bias);
    // Degenerate models estimate with zero variance; agreement there is
    // exact-or-broken rather than statistical.
    let z = if estimate.stderr < 1e-12 {
        if diff.abs() <= 1e-9 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        diff / estimate.stderr
    };
    Ok(Comparison { exact, estimate, z })
}
