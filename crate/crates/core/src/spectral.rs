//! Exact mean cycle time for matrices whose four entries are independent
//! exponentials with arbitrary rates.
//!
//! For `A = [[Exp(μ), Exp(ν)], [Exp(σ), Exp(τ)]]` the coordinate
//! difference `Y(k) = z₂(k) − z₁(k)` is an ergodic Markov chain on ℝ
//! whose stationary law is a signed mixture of exponentials on each half
//! line, four phases per side.  The mixture weights `ω = (ω₁, ω₂) ∈ ℝ⁸`
//! are stationary for an explicit 8×8 rational matrix `W(μ,ν,σ,τ)`:
//!
//! ```text
//! ω = W ω,   ω₁₀ + ω₂₀ = 1
//! ```
//!
//! (the leading weight of each side carries the total mass of that half
//! line).  The mean cycle time is then a contraction of the weights with
//! per-phase expected increments `q₁, q₂`:
//!
//! ```text
//! λ = q₁ᵀ ω₁ + q₂ᵀ ω₂
//! ```
//!
//! Everything here is a fixed rational function of the four rates, so the
//! only numerics is one well-conditioned 8×8 solve.  The result is exact
//! to solver precision and serves as the cross-check target for the
//! closed forms of the equal-rate and diagonal/off-diagonal special
//! cases.

use crate::analytic::Rate;
use crate::numerics::{self, NumericsError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectralError {
    /// A rate is missing, non-finite, or not strictly positive.
    #[error("invalid rate quadruple: {what}")]
    InvalidRate { what: String },
    /// The solved weights fail the stationarity residual check.
    #[error("stationary weight residual {residual:.3e} exceeds tolerance")]
    WeightResidual { residual: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Rates of the four independent exponential entries, in matrix order:
/// `[[Exp(mu), Exp(nu)], [Exp(sigma), Exp(tau)]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateQuad {
    pub mu: f64,
    pub nu: f64,
    pub sigma: f64,
    pub tau: f64,
}

impl RateQuad {
    pub fn new(mu: f64, nu: f64, sigma: f64, tau: f64) -> Result<Self, SpectralError> {
        for (name, r) in [("mu", mu), ("nu", nu), ("sigma", sigma), ("tau", tau)] {
            if !r.is_finite() || r <= 0.0 {
                return Err(SpectralError::InvalidRate {
                    what: format!("{name} = {r} (rates must be finite and positive)"),
                });
            }
        }
        Ok(RateQuad { mu, nu, sigma, tau })
    }
}

/// Stationary phase weights of the difference chain.  `omega1` weights
/// the phases of the positive half line, `omega2` the negative one;
/// `omega1[0] + omega2[0] = 1`.
#[derive(Clone, Copy, Debug)]
pub struct StationaryWeights {
    pub omega1: [f64; 4],
    pub omega2: [f64; 4],
}

type U = [[f64; 3]; 4];
type V = [[f64; 4]; 3];

fn u1(q: &RateQuad) -> U {
    let RateQuad { mu, nu, tau, .. } = *q;
    [
        [1.0, 1.0, 1.0],
        [mu / (mu + nu), 0.5, (mu + nu) / (mu + 2.0 * nu)],
        [mu / (mu + tau), nu / (nu + tau), (mu + nu) / (mu + nu + tau)],
        [
            mu / (mu + nu + tau),
            nu / (2.0 * nu + tau),
            (mu + nu) / (mu + 2.0 * nu + tau),
        ],
    ]
}

fn u2(q: &RateQuad) -> U {
    let RateQuad { mu, sigma, tau, .. } = *q;
    [
        [1.0, 1.0, 1.0],
        [
            sigma / (mu + sigma),
            tau / (mu + tau),
            (sigma + tau) / (mu + sigma + tau),
        ],
        [0.5, tau / (sigma + tau), (sigma + tau) / (2.0 * sigma + tau)],
        [
            sigma / (mu + 2.0 * sigma),
            tau / (mu + sigma + tau),
            (sigma + tau) / (mu + 2.0 * sigma + tau),
        ],
    ]
}

fn v11(q: &RateQuad) -> V {
    let RateQuad { mu, nu, sigma, tau } = *q;
    [
        [
            sigma / (mu + sigma),
            0.0,
            -mu * sigma / ((mu + tau) * (mu + sigma + tau)),
            0.0,
        ],
        [
            0.0,
            sigma / (nu + sigma),
            0.0,
            -nu * sigma / ((nu + tau) * (nu + sigma + tau)),
        ],
        [
            0.0,
            -sigma / (mu + nu + sigma),
            0.0,
            sigma * (mu + nu) / ((mu + nu + tau) * (mu + nu + sigma + tau)),
        ],
    ]
}

fn v12(q: &RateQuad) -> V {
    let RateQuad { mu, nu, sigma, tau } = *q;
    [
        [
            0.0,
            tau / (mu + tau),
            0.0,
            -mu * tau / ((mu + sigma) * (mu + sigma + tau)),
        ],
        [
            tau / (nu + tau),
            0.0,
            -nu * tau / ((nu + sigma) * (nu + sigma + tau)),
            0.0,
        ],
        [
            0.0,
            -tau / (mu + nu + tau),
            0.0,
            tau * (mu + nu) / ((mu + nu + sigma) * (mu + nu + sigma + tau)),
        ],
    ]
}

fn v21(q: &RateQuad) -> V {
    let RateQuad { mu, nu, sigma, tau } = *q;
    [
        [
            mu / (mu + sigma),
            -mu * sigma / ((nu + sigma) * (mu + nu + sigma)),
            0.0,
            0.0,
        ],
        [
            0.0,
            0.0,
            mu / (mu + tau),
            -mu * tau / ((nu + tau) * (mu + nu + tau)),
        ],
        [
            0.0,
            0.0,
            -mu / (mu + sigma + tau),
            mu * (sigma + tau) / ((nu + sigma + tau) * (mu + nu + sigma + tau)),
        ],
    ]
}

fn v22(q: &RateQuad) -> V {
    let RateQuad { mu, nu, sigma, tau } = *q;
    [
        [
            0.0,
            0.0,
            nu / (nu + sigma),
            -nu * sigma / ((mu + sigma) * (mu + nu + sigma)),
        ],
        [
            nu / (nu + tau),
            -nu * tau / ((mu + tau) * (mu + nu + tau)),
            0.0,
            0.0,
        ],
        [
            0.0,
            0.0,
            -nu / (nu + sigma + tau),
            nu * (sigma + tau) / ((mu + sigma + tau) * (mu + nu + sigma + tau)),
        ],
    ]
}

/// Per-phase expected increments contracted against `omega1`.
fn q1(q: &RateQuad) -> [f64; 4] {
    let RateQuad { mu, nu, sigma, tau } = *q;
    [
        (mu * mu + mu * sigma + sigma * sigma) / (mu * sigma * (mu + sigma)),
        mu * sigma * (mu + 2.0 * nu + sigma)
            / (nu * (mu + nu) * (nu + sigma) * (mu + nu + sigma)),
        mu * sigma * (mu + sigma + 2.0 * tau)
            / (tau * (mu + tau) * (sigma + tau) * (mu + sigma + tau)),
        -mu * sigma * (mu + 2.0 * nu + 2.0 * tau + sigma)
            / ((nu + tau) * (mu + nu + tau) * (nu + sigma + tau) * (mu + nu + sigma + tau)),
    ]
}

/// Per-phase expected increments contracted against `omega2`.
fn q2(q: &RateQuad) -> [f64; 4] {
    let RateQuad { mu, nu, sigma, tau } = *q;
    [
        (nu * nu + nu * tau + tau * tau) / (nu * tau * (nu + tau)),
        nu * tau * (2.0 * mu + nu + tau) / (mu * (mu + nu) * (mu + tau) * (mu + nu + tau)),
        nu * tau * (nu + 2.0 * sigma + tau)
            / (sigma * (nu + sigma) * (sigma + tau) * (nu + sigma + tau)),
        -nu * tau * (2.0 * mu + nu + 2.0 * sigma + tau)
            / ((mu + sigma) * (mu + nu + sigma) * (mu + sigma + tau) * (mu + nu + sigma + tau)),
    ]
}

/// Multiply a 4×3 factor by a 3×4 factor into the given 4×4 block of the
/// 8×8 matrix `w` (row-major), at block row `br` and block column `bc`.
fn fill_block(w: &mut [f64], u: &U, v: &V, br: usize, bc: usize) {
    for r in 0..4 {
        for c in 0..4 {
            let mut acc = 0.0;
            for k in 0..3 {
                acc += u[r][k] * v[k][c];
            }
            w[(4 * br + r) * 8 + (4 * bc + c)] = acc;
        }
    }
}

/// The 8×8 stationarity matrix `W` acting on the stacked weights
/// `(ω₁, ω₂)`.
pub fn build_w(q: &RateQuad) -> Vec<f64> {
    let mut w = vec![0.0; 64];
    fill_block(&mut w, &u1(q), &v11(q), 0, 0);
    fill_block(&mut w, &u1(q), &v12(q), 0, 1);
    fill_block(&mut w, &u2(q), &v21(q), 1, 0);
    fill_block(&mut w, &u2(q), &v22(q), 1, 1);
    w
}

/// Solve the stationarity system `(I − W)ω = 0` with the normalization
/// `ω₁₀ + ω₂₀ = 1` substituted for the first (redundant) equation, and
/// verify the residual of the full homogeneous system.
pub fn stationary_weights(q: &RateQuad) -> Result<StationaryWeights, SpectralError> {
    let w = build_w(q);
    let mut a = vec![0.0; 64];
    for r in 0..8 {
        for c in 0..8 {
            a[r * 8 + c] = f64::from(r == c) - w[r * 8 + c];
        }
    }
    for c in 0..8 {
        a[c] = f64::from(c == 0 || c == 4);
    }
    let mut b = vec![0.0; 8];
    b[0] = 1.0;
    let omega = numerics::solve(a, b, 8)?;

    let mut residual = (omega[0] + omega[4] - 1.0).abs();
    for r in 0..8 {
        let mut acc = omega[r];
        for c in 0..8 {
            acc -= w[r * 8 + c] * omega[c];
        }
        residual = residual.max(acc.abs());
    }
    if residual > 1e-9 {
        return Err(SpectralError::WeightResidual { residual });
    }

    let mut omega1 = [0.0; 4];
    let mut omega2 = [0.0; 4];
    omega1.copy_from_slice(&omega[..4]);
    omega2.copy_from_slice(&omega[4..]);
    Ok(StationaryWeights { omega1, omega2 })
}

/// Exact mean cycle time of `[[Exp(μ), Exp(ν)], [Exp(σ), Exp(τ)]]` with
/// all four entries independent.
pub fn lambda_pure_exponential(q: &RateQuad) -> Result<Rate, SpectralError> {
    let weights = stationary_weights(q)?;
    let (q1, q2) = (q1(q), q2(q));
    let mut lambda = 0.0;
    for j in 0..4 {
        lambda += q1[j] * weights.omega1[j] + q2[j] * weights.omega2[j];
    }
    Ok(Rate::exact(lambda))
}
