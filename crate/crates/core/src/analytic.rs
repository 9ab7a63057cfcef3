//! Closed-form mean cycle times for solvable model families.
//!
//! For a stochastic 2×2 max-plus recurrence `z(k) = A(k) ⊗ z(k−1)` the mean
//! cycle time is `λ = lim ‖z(k)‖ / k` (a.s. and in mean), where `‖·‖` is
//! the largest coordinate.  This module collects every family with an
//! explicit formula:
//!
//! * i.i.d. entries: exponential, Bernoulli, geometric (rational functions
//!   of the parameter), uniform on [0, 1] and discrete uniform (tabulated
//!   or via the exact Markov chain in [`crate::chain`]);
//! * all-exponential matrices with equal diagonal and equal off-diagonal
//!   rates: a ratio of homogeneous polynomials of degree 10 and 9;
//! * exponential matrices with a zero row/column, zero diagonal, or zero
//!   off-diagonal: small rational functions of the two rates;
//! * exponential matrices with a single zero entry whose remaining rates
//!   collide pairwise: rational functions of degree up to 10;
//! * matrices mixing one random entry with constants: formulas obtained
//!   from the limiting law of the coordinate increment, a fixed point of
//!   an explicit contraction ([`fixed_point_ab`],
//!   [`increment_distribution_const_diag`]);
//! * a zero row with a general random diagonal entry: `λ` as the mean of
//!   the entry law plus an integral solved by adaptive quadrature
//!   ([`lambda_zero_row_general`]), with an arctangent closed form in the
//!   exponential case ([`lambda_zero_row_exp_const`]).
//!
//! The polynomial families are also evaluated over exact big rationals in
//! [`exact`], which is how the reference constants like `407/228` are
//! reproduced without rounding.

use crate::chain;
use crate::distributions::Distribution;
use crate::numerics::{self, NumericsError};
use num::{BigRational, FromPrimitive, Zero};
use thiserror::Error;

/// A computed mean cycle time.
///
/// `low_precision` marks values that are only available as tabulated
/// constants with about three significant decimals (the i.i.d. uniform
/// case); everything else is accurate to floating-point working precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rate {
    pub lambda: f64,
    pub low_precision: bool,
}

impl Rate {
    pub(crate) fn exact(lambda: f64) -> Rate {
        Rate {
            lambda,
            low_precision: false,
        }
    }
}

/// Errors from the closed-form evaluators.
#[derive(Debug, Error)]
pub enum AnalyticError {
    /// A parameter is outside the range the formula is valid for.
    #[error("unsupported parameter: {what}")]
    UnsupportedParam { what: String },
    /// The limiting increment ratio degenerates: the diagonal entry's
    /// support ends below `c/2`, so the denominator `1 − F(t)F(c−t)`
    /// vanishes on a set of positive measure.
    #[error(
        "increment ratio degenerates: support of F ends at {sup}, below c/2 = {half_c}"
    )]
    RatioDegenerate { sup: f64, half_c: f64 },
    /// The fixed-point iteration failed to reach the tolerance (cannot
    /// happen for valid parameters; the map is a contraction).
    #[error("fixed-point iteration did not converge within {iterations} iterations")]
    DidNotConverge { iterations: u32 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    /// Delegation to the exact Markov chain failed.
    #[error(transparent)]
    Chain(#[from] chain::ChainError),
}

fn unsupported(what: impl Into<String>) -> AnalyticError {
    AnalyticError::UnsupportedParam { what: what.into() }
}

fn require_rate(name: &str, v: f64) -> Result<(), AnalyticError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(unsupported(format!("rate {name} must be positive, got {v}")))
    }
}

fn require_nonneg(name: &str, v: f64) -> Result<(), AnalyticError> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(unsupported(format!("{name} must be nonnegative, got {v}")))
    }
}

/// Numeric tower shared by the `f64` and exact-rational evaluation paths.
pub(crate) trait Scalar:
    Clone + Zero + FromPrimitive + std::ops::Add<Output = Self> + std::ops::Mul<Output = Self>
{
    fn int(k: i64) -> Self {
        Self::from_i64(k).expect("small integer must convert")
    }
}

impl<T> Scalar for T where
    T: Clone + Zero + FromPrimitive + std::ops::Add<Output = T> + std::ops::Mul<Output = T>
{
}

/// Evaluate the homogeneous bivariate polynomial
/// `Σᵢ coeffs[i] · x^(d−i) · y^i` with `d = coeffs.len() − 1`.
pub(crate) fn homog<T: Scalar>(coeffs: &[i64], x: &T, y: &T) -> T {
    let d = coeffs.len() - 1;
    let mut xp = vec![T::int(1)];
    let mut yp = vec![T::int(1)];
    for k in 1..=d {
        xp.push(xp[k - 1].clone() * x.clone());
        yp.push(yp[k - 1].clone() * y.clone());
    }
    let mut acc = T::zero();
    for (i, &ci) in coeffs.iter().enumerate() {
        acc = acc + T::int(ci) * xp[d - i].clone() * yp[i].clone();
    }
    acc
}

/// Evaluate `Σᵢ coeffs[i] · x^i` (ascending powers) by Horner's rule.
pub(crate) fn poly_asc<T: Scalar>(coeffs: &[i64], x: &T) -> T {
    let mut acc = T::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * x.clone() + T::int(c);
    }
    acc
}

// Coefficient tables for the all-exponential families.  Each table lists a
// homogeneous polynomial from the pure power of its first rate down to the
// pure power of its second.

/// Numerator of the equal-diagonal/equal-off-diagonal rate, degree 10 in
/// (μ, ν); the full rate is `P / (16 μ ν (μ+ν) R)`.
const DIAG_OFFDIAG_P: [i64; 11] = [
    160, 1776, 8220, 21378, 35595, 41566, 35595, 21378, 8220, 1776, 160,
];
/// Degree-8 factor of the denominator of the same rate.
const DIAG_OFFDIAG_R: [i64; 9] = [8, 80, 321, 690, 880, 690, 321, 80, 8];

const ONE_ZERO_DIAG_SM_N: [i64; 6] = [48, 238, 495, 581, 326, 68];
const ONE_ZERO_DIAG_SM_D: [i64; 5] = [36, 147, 215, 130, 28];

const ONE_ZERO_DIAG_SN_N: [i64; 9] = [15, 152, 624, 1382, 1838, 1592, 973, 384, 64];
const ONE_ZERO_DIAG_SN_D: [i64; 6] = [12, 97, 286, 397, 256, 64];

const ONE_ZERO_OFF_NM_N: [i64; 9] = [288, 1048, 1936, 2688, 3012, 2226, 941, 204, 17];
const ONE_ZERO_OFF_NM_D: [i64; 8] = [144, 524, 968, 1200, 910, 387, 84, 7];

const ONE_ZERO_OFF_TM_N: [i64; 11] = [
    256, 2112, 8044, 19355, 32167, 36887, 28709, 14854, 4912, 944, 80,
];
const ONE_ZERO_OFF_TM_D: [i64; 9] = [192, 1344, 4047, 6770, 6799, 4216, 1600, 344, 32];

/// Ascending coefficients of the bracket in the i.i.d. geometric
/// numerator `p · (4 + 18p + … + p¹³)`.
const GEOMETRIC_N: [i64; 14] = [4, 18, 50, 99, 175, 244, 289, 273, 218, 137, 77, 32, 11, 1];
/// Ascending coefficients of the degree-10 factor of the geometric
/// denominator `(1−p)(1+p)(1+p+p²) · (…)`.
const GEOMETRIC_D10: [i64; 11] = [1, 6, 8, 20, 25, 32, 25, 20, 8, 6, 1];

/// Mean cycle time when all four entries are i.i.d. with the given law.
///
/// Supported laws: exponential (`407/(228 μ)`), Bernoulli and geometric
/// (rational functions of `p`), uniform on `[0, 1]` (tabulated to three
/// decimals), and discrete uniform (delegated to the exact Markov chain).
pub fn lambda_iid(law: &Distribution) -> Result<Rate, AnalyticError> {
    law.validate()
        .map_err(|e| unsupported(e.to_string()))?;
    match law {
        Distribution::Exponential { rate } => Ok(Rate::exact(407.0 / (228.0 * rate))),
        Distribution::Uniform { lo, hi } => {
            if *lo == 0.0 && *hi == 1.0 {
                Ok(Rate {
                    lambda: 0.719,
                    low_precision: true,
                })
            } else {
                Err(unsupported(format!(
                    "i.i.d. uniform is tabulated only on [0, 1], got [{lo}, {hi}]"
                )))
            }
        }
        Distribution::Bernoulli { p } => {
            // λ = 1 − (1+2p)(1−p)⁴ / (1 + 2p(1−p)(1−3p+p²)).
            let q = 1.0 - p;
            let den = 1.0 + 2.0 * p * q * (1.0 - 3.0 * p + p * p);
            Ok(Rate::exact(1.0 - (1.0 + 2.0 * p) * q.powi(4) / den))
        }
        Distribution::Geometric { p } => {
            let num = p * poly_asc(&GEOMETRIC_N, p);
            let den = (1.0 - p)
                * (1.0 + p)
                * (1.0 + p + p * p)
                * poly_asc(&GEOMETRIC_D10, p);
            Ok(Rate::exact(num / den))
        }
        Distribution::DiscreteUniform { m } => {
            let d = Distribution::DiscreteUniform { m: *m };
            let model = crate::model::MatrixModel::new(d.clone(), d.clone(), d.clone(), d);
            Ok(chain::lambda_discrete(&model)?)
        }
        other => Err(unsupported(format!(
            "no i.i.d. closed form for {other}"
        ))),
    }
}

/// Mean cycle time of the all-exponential model with diagonal rate μ and
/// off-diagonal rate ν: a degree-10 over degree-9 homogeneous rational
/// function, equal to `407/(228 μ)` when ν = μ.
pub fn lambda_diag_offdiag_exp(mu: f64, nu: f64) -> Result<Rate, AnalyticError> {
    require_rate("mu", mu)?;
    require_rate("nu", nu)?;
    let p = homog(&DIAG_OFFDIAG_P, &mu, &nu);
    let r = homog(&DIAG_OFFDIAG_R, &mu, &nu);
    Ok(Rate::exact(p / (16.0 * mu * nu * (mu + nu) * r)))
}

/// Which entries of the exponential matrix are pinned to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroPattern {
    /// `[[Exp(a), 0], [0, Exp(b)]]`.
    Offdiag,
    /// `[[0, Exp(a)], [Exp(b), 0]]`.
    Diag,
    /// `[[Exp(a), Exp(b)], [0, 0]]`.
    Row,
    /// `[[Exp(a), 0], [Exp(b), 0]]` (transpose of `Row`).
    Column,
}

/// Mean cycle time of the two-rate exponential patterns with two zero
/// entries.
pub fn lambda_zero_pattern_exp(pattern: ZeroPattern, a: f64, b: f64) -> Result<Rate, AnalyticError> {
    require_rate("first rate", a)?;
    require_rate("second rate", b)?;
    let lambda = match pattern {
        ZeroPattern::Offdiag => {
            // (μ⁴+μ³τ+μ²τ²+μτ³+τ⁴) / (μτ(μ+τ)(μ²+τ²))
            homog(&[1, 1, 1, 1, 1], &a, &b) / (a * b * (a + b) * (a * a + b * b))
        }
        ZeroPattern::Diag => {
            // (4ν²+7νσ+4σ²) / (6νσ(ν+σ))
            homog(&[4, 7, 4], &a, &b) / (6.0 * a * b * (a + b))
        }
        ZeroPattern::Row | ZeroPattern::Column => {
            // (2μ⁴+7μ³ν+10μ²ν²+11μν³+4ν⁴) / (μν(μ+ν)²(3μ+4ν))
            homog(&[2, 7, 10, 11, 4], &a, &b)
                / (a * b * (a + b) * (a + b) * (3.0 * a + 4.0 * b))
        }
    };
    Ok(Rate::exact(lambda))
}

/// The four single-zero-entry exponential matrices whose remaining rates
/// collide pairwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneZeroCase {
    /// `[[Exp(μ), Exp(ν)], [Exp(μ), 0]]`: zero diagonal entry, σ = μ.
    DiagSigmaEqMu,
    /// `[[Exp(μ), Exp(ν)], [Exp(ν), 0]]`: zero diagonal entry, σ = ν.
    DiagSigmaEqNu,
    /// `[[Exp(μ), Exp(μ)], [0, Exp(τ)]]`: zero off-diagonal entry, ν = μ.
    OffdiagNuEqMu,
    /// `[[Exp(μ), Exp(ν)], [0, Exp(μ)]]`: zero off-diagonal entry, τ = μ.
    OffdiagTauEqMu,
}

/// Mean cycle time of the single-zero-entry exponential special cases.
///
/// `x` is always the rate μ of the top-left entry; `y` is the other free
/// rate of the case (ν or τ).
pub fn lambda_one_zero_entry_exp(case: OneZeroCase, x: f64, y: f64) -> Result<Rate, AnalyticError> {
    require_rate("mu", x)?;
    require_rate("second rate", y)?;
    let lambda = match case {
        OneZeroCase::DiagSigmaEqMu => {
            homog(&ONE_ZERO_DIAG_SM_N, &x, &y) / (2.0 * x * y * homog(&ONE_ZERO_DIAG_SM_D, &x, &y))
        }
        OneZeroCase::DiagSigmaEqNu => {
            homog(&ONE_ZERO_DIAG_SN_N, &x, &y)
                / (x * y * (x + y) * (x + y) * homog(&ONE_ZERO_DIAG_SN_D, &x, &y))
        }
        OneZeroCase::OffdiagNuEqMu => {
            homog(&ONE_ZERO_OFF_NM_N, &x, &y) / (2.0 * x * y * homog(&ONE_ZERO_OFF_NM_D, &x, &y))
        }
        OneZeroCase::OffdiagTauEqMu => {
            homog(&ONE_ZERO_OFF_TM_N, &x, &y)
                / (2.0 * x * y * (x + y) * homog(&ONE_ZERO_OFF_TM_D, &x, &y))
        }
    };
    Ok(Rate::exact(lambda))
}

/// Mean cycle time of `[[Exp(μ), 0], [0, c]]`.
///
/// With `C = e^{−μc}` and `D = 2 − 4μcC + μ²c²C²`,
/// `λ = c + 2C³ / (μD)`.  Limits: `c → 0` gives `1/μ`, `μ → ∞` gives `c`.
pub fn lambda_const_diag_one_random(mu: f64, c: f64) -> Result<Rate, AnalyticError> {
    require_rate("mu", mu)?;
    require_nonneg("c", c)?;
    let cap_c = (-mu * c).exp();
    let kappa = mu * c * cap_c;
    let d = 2.0 - 4.0 * kappa + kappa * kappa;
    Ok(Rate::exact(c + 2.0 * cap_c.powi(3) / (mu * d)))
}

/// Mean cycle time of `[[c, Exp(ν)], [0, 0]]`.
///
/// With `E = e^{−2νc}`, `λ = c + 2E / (ν(2 + E))`; `c → 0` gives `2/(3ν)`.
pub fn lambda_zero_row_const_diag(nu: f64, c: f64) -> Result<Rate, AnalyticError> {
    require_rate("nu", nu)?;
    require_nonneg("c", c)?;
    let e = (-2.0 * nu * c).exp();
    Ok(Rate::exact(c + 2.0 * e / (nu * (2.0 + e))))
}

/// Mean cycle time of `[[Exp(μ), c], [0, 0]]` in closed form.
///
/// `λ = c/2 + e^{−μc}/μ + (3·atan(R) − π) / (μR)` with
/// `R = √(4e^{μc} − 1)`.  At `c = 0` the arctangent term vanishes
/// (`atan √3 = π/3`) and `λ = 1/μ`.
pub fn lambda_zero_row_exp_const(mu: f64, c: f64) -> Result<Rate, AnalyticError> {
    require_rate("mu", mu)?;
    require_nonneg("c", c)?;
    let r = (4.0 * (mu * c).exp() - 1.0).sqrt();
    let lambda = 0.5 * c + (-mu * c).exp() / mu + (3.0 * r.atan() - std::f64::consts::PI) / (mu * r);
    Ok(Rate::exact(lambda))
}

/// Mean cycle time of `[[Exp(μ), c], [c, c]]` (three equal constants).
///
/// With `C = e^{−μc}`, `λ = c + 2C / (μ(2 + C − 2C² + C³))`; `c → 0`
/// gives `1/μ`.
pub fn lambda_three_const_symmetric(mu: f64, c: f64) -> Result<Rate, AnalyticError> {
    require_rate("mu", mu)?;
    require_nonneg("c", c)?;
    let cap_c = (-mu * c).exp();
    let den = mu * (2.0 + cap_c - 2.0 * cap_c * cap_c + cap_c.powi(3));
    Ok(Rate::exact(c + 2.0 * cap_c / den))
}

/// The stable increment-ratio integrand for the zero-row model: with
/// `f1 = F(t)` and `f2 = F(c−t)`,
/// `num = f1·f2·(1−f1)` and `den = (1−f1) + f1·(1−f2)`, so the result
/// always lies in `[0, 1]` and the only way `den` can vanish is the
/// degenerate configuration rejected up front.
fn zero_row_integrand(f: &Distribution, c: f64, t: f64) -> f64 {
    let f1 = f.cdf(t);
    let f2 = f.cdf(c - t);
    let num = f1 * f2 * (1.0 - f1);
    let den = (1.0 - f1) + f1 * (1.0 - f2);
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

fn zero_row_breakpoints(f: &Distribution, c: f64) -> Vec<f64> {
    let mut cuts = f.breakpoints_within(0.0, c);
    let reflected: Vec<f64> = cuts.iter().map(|b| c - b).collect();
    cuts.extend(reflected);
    cuts
}

fn check_ratio_degenerate(f: &Distribution, c: f64) -> Result<(), AnalyticError> {
    if let Some(sup) = f.sup_support() {
        if 2.0 * sup < c {
            return Err(AnalyticError::RatioDegenerate {
                sup,
                half_c: 0.5 * c,
            });
        }
    }
    Ok(())
}

/// Mean cycle time of `[[F, c], [0, 0]]` for a general diagonal entry law
/// `F` with finite mean:
///
/// `λ = E[F] + ∫₀ᶜ F(t)·F(c−t)·(1−F(t)) / ((1−F(t)) + F(t)(1−F(c−t))) dt`,
///
/// evaluated by breakpoint-aware adaptive quadrature.  Fails with
/// [`AnalyticError::RatioDegenerate`] when the support of `F` ends
/// strictly below `c/2`, in which case the limiting increment law does
/// not exist (the system locks into a period-two orbit).
pub fn lambda_zero_row_general(f: &Distribution, c: f64) -> Result<Rate, AnalyticError> {
    f.validate().map_err(|e| unsupported(e.to_string()))?;
    require_nonneg("c", c)?;
    check_ratio_degenerate(f, c)?;
    let cuts = zero_row_breakpoints(f, c);
    let integral = numerics::integrate_with_breakpoints(
        &|t| zero_row_integrand(f, c, t),
        0.0,
        c,
        &cuts,
        numerics::DEFAULT_QUAD_TOL,
    )?;
    Ok(Rate::exact(f.mean() + integral))
}

/// State of the two-term fixed point behind the constant-diagonal model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPointState {
    pub a: f64,
    pub b: f64,
    pub iterations: u32,
}

/// Contraction factor bound for [`fixed_point_ab`]: the iteration matrix
/// has spectral radius `μcC(1 + √2/2) ≤ e⁻¹(1 + √2/2) ≈ 0.628` uniformly
/// in the parameters.
pub const FIXED_POINT_CONTRACTION: f64 = 0.6282;

/// Solve the pair of moment equations of the constant-diagonal model by
/// fixed-point iteration from `(0, 0)`:
///
/// `a ← μcC(a + b + C)`, `b ← μcC(a/2 + b + C)` with `C = e^{−μc}`.
///
/// The map is affine with spectral radius at most
/// [`FIXED_POINT_CONTRACTION`], so the iteration count is bounded by
/// `ln(tol) / ln(0.6282)` plus a constant; the closed-form limit is
/// `a = 2μcC²/D`, `b = (2−μcC)μcC²/D` (see [`fixed_point_closed_form`]).
pub fn fixed_point_ab(mu: f64, c: f64, tol: f64) -> Result<FixedPointState, AnalyticError> {
    require_rate("mu", mu)?;
    require_nonneg("c", c)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(unsupported(format!("tolerance must be positive, got {tol}")));
    }
    let cap_c = (-mu * c).exp();
    let kappa = mu * c * cap_c;
    let mut a = 0.0_f64;
    let mut b = 0.0_f64;
    for it in 1..=10_000 {
        let na = kappa * (a + b + cap_c);
        let nb = kappa * (0.5 * a + b + cap_c);
        let change = (na - a).abs().max((nb - b).abs());
        a = na;
        b = nb;
        if change <= tol {
            return Ok(FixedPointState {
                a,
                b,
                iterations: it,
            });
        }
    }
    Err(AnalyticError::DidNotConverge { iterations: 10_000 })
}

/// The exact limit of [`fixed_point_ab`].
pub fn fixed_point_closed_form(mu: f64, c: f64) -> Result<(f64, f64), AnalyticError> {
    require_rate("mu", mu)?;
    require_nonneg("c", c)?;
    let cap_c = (-mu * c).exp();
    let kappa = mu * c * cap_c;
    let d = 2.0 - 4.0 * kappa + kappa * kappa;
    Ok((
        2.0 * kappa * cap_c / d,
        (2.0 - kappa) * kappa * cap_c / d,
    ))
}

enum IncrementKind {
    ConstDiag { mu: f64, c: f64 },
    ZeroRow { f: Distribution, c: f64 },
}

/// The limiting law of the per-step increment `X(k) = x(k) − x(k−1)` of a
/// solvable constant-entry model, with the crate's left-continuous CDF
/// convention.
///
/// Its mean equals the mean cycle time of the owning model exactly; the
/// `mean` field stores the closed-form value and
/// [`IncrementDistribution::mean_by_quadrature`] recomputes it from the
/// CDF for cross-checking.
pub struct IncrementDistribution {
    kind: IncrementKind,
    /// Location and mass of the single point mass, when there is one.
    pub atom: Option<(f64, f64)>,
    /// Mean of the law, equal to the model's mean cycle time.
    pub mean: f64,
}

impl IncrementDistribution {
    /// Left-continuous CDF `P{X < t}` of the limiting increment.
    pub fn cdf(&self, t: f64) -> f64 {
        match &self.kind {
            IncrementKind::ConstDiag { mu, c } => {
                if t <= 0.0 {
                    return 0.0;
                }
                if t > *c {
                    return -(-mu * t).exp_m1();
                }
                let cap_c = (-mu * c).exp();
                let d = {
                    let kappa = mu * c * cap_c;
                    2.0 - 4.0 * kappa + kappa * kappa
                };
                let k = 2.0 * cap_c * cap_c / d;
                k * (mu * cap_c * t - 1.0) * (1.0 - (mu * t).exp())
            }
            IncrementKind::ZeroRow { f, c } => {
                if t <= 0.0 {
                    0.0
                } else if t > *c {
                    f.cdf(t)
                } else {
                    let f1 = f.cdf(t);
                    let f2 = f.cdf(c - t);
                    let den = (1.0 - f1) + f1 * (1.0 - f2);
                    if den == 0.0 {
                        1.0
                    } else {
                        f1 * (1.0 - f2) / den
                    }
                }
            }
        }
    }

    /// Recompute the mean as `∫₀^∞ (1 − cdf)`, splitting off the exact
    /// exponential tail beyond `c`, for validation against `self.mean`.
    pub fn mean_by_quadrature(&self) -> Result<f64, NumericsError> {
        match &self.kind {
            IncrementKind::ConstDiag { mu, c } => {
                let head = numerics::integrate_with_breakpoints(
                    &|t| 1.0 - self.cdf(t),
                    0.0,
                    *c,
                    &[],
                    1e-10,
                )?;
                Ok(head + (-mu * c).exp() / mu)
            }
            IncrementKind::ZeroRow { f, c } => {
                // mean = E[F] + ∫₀ᶜ (F(t) − Φ(t)) dt.
                let cuts = zero_row_breakpoints(f, *c);
                let head = numerics::integrate_with_breakpoints(
                    &|t| f.cdf(t) - self.cdf(t),
                    0.0,
                    *c,
                    &cuts,
                    1e-10,
                )?;
                Ok(f.mean() + head)
            }
        }
    }
}

/// Limiting increment law of `[[Exp(μ), 0], [0, c]]`.
///
/// The CDF is exponential-like below and above `c` with a point mass at
/// `c` itself (steps where the constant path is binding); the mass is
/// reported in `atom`.
pub fn increment_distribution_const_diag(
    mu: f64,
    c: f64,
) -> Result<IncrementDistribution, AnalyticError> {
    let mean = lambda_const_diag_one_random(mu, c)?.lambda;
    let mut inc = IncrementDistribution {
        kind: IncrementKind::ConstDiag { mu, c },
        atom: None,
        mean,
    };
    let mass = (1.0 - (-mu * c).exp()) - inc.cdf(c);
    if mass > 1e-15 {
        inc.atom = Some((c, mass));
    }
    Ok(inc)
}

/// Limiting increment law of `[[F, c], [0, 0]]`.
///
/// On `(0, c]` the CDF is the ratio `F(t)(1−F(c−t)) / (1−F(t)F(c−t))`
/// (written in its cancellation-free form), and beyond `c` it coincides
/// with `F`.  Any point masses are inherited from `F`, so no single
/// `atom` is reported.
pub fn increment_distribution_zero_row(
    f: &Distribution,
    c: f64,
) -> Result<IncrementDistribution, AnalyticError> {
    let mean = lambda_zero_row_general(f, c)?.lambda;
    Ok(IncrementDistribution {
        kind: IncrementKind::ZeroRow { f: f.clone(), c },
        atom: None,
        mean,
    })
}

/// The `k`-th iterate of the increment-CDF recursion of the zero-row
/// model on a symmetric grid of `n` points spanning `[0, c]`.
///
/// Starting from `Φ₁ ≡ 0` on `[0, c]`, each step applies
/// `Φ_{j+1}(t) = F(t)·(1 − Φ_j(c − t))`.  The symmetric grid makes the
/// reflection `c − tᵢ` land exactly on a grid point.  The sup-gap to the
/// limiting CDF contracts like `G_max^⌊k/2⌋` with
/// `G_max = sup_t F(t)F(c−t)`.
pub fn zero_row_increment_iterate(f: &Distribution, c: f64, n: usize, k: u32) -> Vec<f64> {
    assert!(n >= 2, "grid needs at least two points");
    assert!(k >= 1, "iterate index starts at 1");
    let grid: Vec<f64> = (0..n).map(|i| c * i as f64 / (n - 1) as f64).collect();
    let mut phi = vec![0.0; n];
    for _ in 1..k {
        let prev = phi.clone();
        for i in 0..n {
            phi[i] = f.cdf(grid[i]) * (1.0 - prev[n - 1 - i]);
        }
    }
    phi
}

/// Exact-rational evaluation of the polynomial families, for reproducing
/// reference constants like `407/228` without rounding.
pub mod exact {
    use super::*;
    use num::BigInt;

    pub fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// `407 / (228 μ)`.
    pub fn lambda_iid_exponential(mu: &BigRational) -> BigRational {
        ratio(407, 228) / mu.clone()
    }

    pub fn lambda_diag_offdiag_exp(mu: &BigRational, nu: &BigRational) -> BigRational {
        let p = homog(&DIAG_OFFDIAG_P, mu, nu);
        let r = homog(&DIAG_OFFDIAG_R, mu, nu);
        p / (BigRational::from_i64(16).unwrap() * mu * nu * (mu + nu) * r)
    }

    pub fn lambda_zero_pattern_exp(
        pattern: ZeroPattern,
        a: &BigRational,
        b: &BigRational,
    ) -> BigRational {
        match pattern {
            ZeroPattern::Offdiag => {
                homog(&[1, 1, 1, 1, 1], a, b)
                    / (a * b * (a + b) * (a * a + b * b))
            }
            ZeroPattern::Diag => {
                homog(&[4, 7, 4], a, b) / (BigRational::from_i64(6).unwrap() * a * b * (a + b))
            }
            ZeroPattern::Row | ZeroPattern::Column => {
                homog(&[2, 7, 10, 11, 4], a, b)
                    / (a * b
                        * (a + b)
                        * (a + b)
                        * (BigRational::from_i64(3).unwrap() * a
                            + BigRational::from_i64(4).unwrap() * b))
            }
        }
    }

    pub fn lambda_one_zero_entry_exp(
        case: OneZeroCase,
        x: &BigRational,
        y: &BigRational,
    ) -> BigRational {
        let two = BigRational::from_i64(2).unwrap();
        match case {
            OneZeroCase::DiagSigmaEqMu => {
                homog(&ONE_ZERO_DIAG_SM_N, x, y)
                    / (two * x * y * homog(&ONE_ZERO_DIAG_SM_D, x, y))
            }
            OneZeroCase::DiagSigmaEqNu => {
                homog(&ONE_ZERO_DIAG_SN_N, x, y)
                    / (x * y * (x + y) * (x + y) * homog(&ONE_ZERO_DIAG_SN_D, x, y))
            }
            OneZeroCase::OffdiagNuEqMu => {
                homog(&ONE_ZERO_OFF_NM_N, x, y)
                    / (two * x * y * homog(&ONE_ZERO_OFF_NM_D, x, y))
            }
            OneZeroCase::OffdiagTauEqMu => {
                homog(&ONE_ZERO_OFF_TM_N, x, y)
                    / (two * x * y * (x + y) * homog(&ONE_ZERO_OFF_TM_D, x, y))
            }
        }
    }

    /// `1 − (1+2p)(1−p)⁴ / (1 + 2p(1−p)(1−3p+p²))`.
    pub fn lambda_iid_bernoulli(p: &BigRational) -> BigRational {
        let one = BigRational::from_i64(1).unwrap();
        let two = BigRational::from_i64(2).unwrap();
        let three = BigRational::from_i64(3).unwrap();
        let q = one.clone() - p;
        let q4 = q.clone() * q.clone() * q.clone() * q.clone();
        let den = one.clone()
            + two.clone() * p * q * (one.clone() - three * p + p * p);
        one.clone() - (one + two * p) * q4 / den
    }

    /// The geometric rational function `N(p) / D(p)`.
    pub fn lambda_iid_geometric(p: &BigRational) -> BigRational {
        let one = BigRational::from_i64(1).unwrap();
        let num = p * poly_asc(&GEOMETRIC_N, p);
        let den = (one.clone() - p)
            * (one.clone() + p)
            * (one + p + p * p)
            * poly_asc(&GEOMETRIC_D10, p);
        num / den
    }
}
