//! Routing from a classified matrix model to the exact solution method
//! that applies to it.
//!
//! [`solve`] classifies the model up to the symmetries that leave the
//! mean cycle time invariant and dispatches to one of five routes:
//!
//! * closed-form rational or elementary expressions,
//! * the tabulated constant for i.i.d. Uniform[0, 1] entries,
//! * the 8×8 spectral system for four independent exponentials,
//! * the exact Markov chain on coordinate differences for discrete laws,
//! * adaptive quadrature of the limiting increment distribution.
//!
//! Models with no exact route return `Ok(None)`; the caller decides
//! whether to fall back to simulation.

use crate::analytic::{self, AnalyticError, OneZeroCase, Rate, ZeroPattern};
use crate::chain::{self, ChainError};
use crate::distributions::Distribution;
use crate::model::{classify, AnalyticCase, Family, MatrixModel};
use crate::spectral::{self, RateQuad, SpectralError};
use num::{BigInt, BigRational};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// How an exact value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    TabulatedConstant,
    Spectral,
    MarkovChain,
    Quadrature,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed form",
            Method::TabulatedConstant => "tabulated constant",
            Method::Spectral => "spectral",
            Method::MarkovChain => "markov chain",
            Method::Quadrature => "quadrature",
        })
    }
}

/// An exact mean cycle time together with its provenance.
#[derive(Clone, Debug)]
pub struct ExactSolution {
    pub case: AnalyticCase,
    pub rate: Rate,
    pub method: Method,
}

/// Compute the exact mean cycle time of a model when a route exists.
///
/// Returns `Ok(None)` when the model falls outside every supported
/// family, and an error when a route exists but its evaluation fails
/// (invalid parameters, chain explosion, degenerate increment ratio with
/// no discrete fallback).
pub fn solve(m: &MatrixModel) -> Result<Option<ExactSolution>, SolverError> {
    let case = classify(m);
    let (rate, method) = match &case.family {
        Family::NoClosedForm => return Ok(None),
        Family::IidExponential { mu } => (
            analytic::lambda_iid(&Distribution::Exponential { rate: *mu })?,
            Method::ClosedForm,
        ),
        Family::IidUniform01 => (
            analytic::lambda_iid(&Distribution::Uniform { lo: 0.0, hi: 1.0 })?,
            Method::TabulatedConstant,
        ),
        Family::IidBernoulli { p } => (
            analytic::lambda_iid(&Distribution::Bernoulli { p: *p })?,
            Method::ClosedForm,
        ),
        Family::IidGeometric { p } => (
            analytic::lambda_iid(&Distribution::Geometric { p: *p })?,
            Method::ClosedForm,
        ),
        Family::IidDiscreteUniform { .. } | Family::DiscreteFiniteSupport => {
            (chain::lambda_discrete(m)?, Method::MarkovChain)
        }
        Family::DiagOffdiagExponential { mu, nu } => {
            (analytic::lambda_diag_offdiag_exp(*mu, *nu)?, Method::ClosedForm)
        }
        Family::PureExponential { mu, nu, sigma, tau } => (
            spectral::lambda_pure_exponential(&RateQuad::new(*mu, *nu, *sigma, *tau)?)?,
            Method::Spectral,
        ),
        Family::ConstDiagOneRandom { mu, c } => (
            analytic::lambda_const_diag_one_random(*mu, *c)?,
            Method::ClosedForm,
        ),
        Family::ZeroRowConstDiag { nu, c } => (
            analytic::lambda_zero_row_const_diag(*nu, *c)?,
            Method::ClosedForm,
        ),
        Family::ThreeConstSymmetric { mu, c } => (
            analytic::lambda_three_const_symmetric(*mu, *c)?,
            Method::ClosedForm,
        ),
        Family::ZeroRowGeneral { f, c } => match f {
            Distribution::Exponential { rate } => (
                analytic::lambda_zero_row_exp_const(*rate, *c)?,
                Method::ClosedForm,
            ),
            _ => match analytic::lambda_zero_row_general(f, *c) {
                Ok(rate) => (rate, Method::Quadrature),
                // When the diagonal law's support ends below c/2 the
                // limiting ratio degenerates and quadrature is invalid,
                // but a finite-support law still admits the exact chain.
                Err(AnalyticError::RatioDegenerate { sup, half_c }) => {
                    match chain::lambda_discrete(m) {
                        Ok(rate) => (rate, Method::MarkovChain),
                        Err(_) => {
                            return Err(AnalyticError::RatioDegenerate { sup, half_c }.into())
                        }
                    }
                }
                Err(e) => return Err(e.into()),
            },
        },
        Family::ZeroOffdiag { mu, tau } => (
            analytic::lambda_zero_pattern_exp(ZeroPattern::Offdiag, *mu, *tau)?,
            Method::ClosedForm,
        ),
        Family::ZeroDiag { nu, sigma } => (
            analytic::lambda_zero_pattern_exp(ZeroPattern::Diag, *nu, *sigma)?,
            Method::ClosedForm,
        ),
        Family::ZeroRow { mu, nu } => (
            analytic::lambda_zero_pattern_exp(ZeroPattern::Row, *mu, *nu)?,
            Method::ClosedForm,
        ),
        Family::OneZeroDiagSigmaEqMu { mu, nu } => (
            analytic::lambda_one_zero_entry_exp(OneZeroCase::DiagSigmaEqMu, *mu, *nu)?,
            Method::ClosedForm,
        ),
        Family::OneZeroDiagSigmaEqNu { mu, nu } => (
            analytic::lambda_one_zero_entry_exp(OneZeroCase::DiagSigmaEqNu, *mu, *nu)?,
            Method::ClosedForm,
        ),
        Family::OneZeroOffdiagNuEqMu { mu, tau } => (
            analytic::lambda_one_zero_entry_exp(OneZeroCase::OffdiagNuEqMu, *mu, *tau)?,
            Method::ClosedForm,
        ),
        Family::OneZeroOffdiagTauEqMu { mu, nu } => (
            analytic::lambda_one_zero_entry_exp(OneZeroCase::OffdiagTauEqMu, *mu, *nu)?,
            Method::ClosedForm,
        ),
    };
    Ok(Some(ExactSolution { case, rate, method }))
}

/// A float reinterpreted as an exact rational, accepted only when the
/// reduced denominator is small enough that the float plausibly *is*
/// that rational (rather than a rounded decimal).
fn small_rational(x: f64) -> Option<BigRational> {
    let q = BigRational::from_float(x)?;
    if q.denom() <= &BigInt::from(1_000_000) {
        Some(q)
    } else {
        None
    }
}

/// Exact rational value of the mean cycle time, for the families whose
/// closed form is a rational function and whose parameters are exactly
/// representable small rationals.  Used for display next to the float.
pub fn exact_rational(case: &AnalyticCase) -> Option<BigRational> {
    use analytic::exact;
    match &case.family {
        Family::IidExponential { mu } => {
            Some(exact::lambda_iid_exponential(&small_rational(*mu)?))
        }
        Family::IidBernoulli { p } => Some(exact::lambda_iid_bernoulli(&small_rational(*p)?)),
        Family::IidGeometric { p } => Some(exact::lambda_iid_geometric(&small_rational(*p)?)),
        Family::DiagOffdiagExponential { mu, nu } => Some(exact::lambda_diag_offdiag_exp(
            &small_rational(*mu)?,
            &small_rational(*nu)?,
        )),
        Family::ZeroOffdiag { mu, tau } => Some(exact::lambda_zero_pattern_exp(
            ZeroPattern::Offdiag,
            &small_rational(*mu)?,
            &small_rational(*tau)?,
        )),
        Family::ZeroDiag { nu, sigma } => Some(exact::lambda_zero_pattern_exp(
            ZeroPattern::Diag,
            &small_rational(*nu)?,
            &small_rational(*sigma)?,
        )),
        Family::ZeroRow { mu, nu } => Some(exact::lambda_zero_pattern_exp(
            ZeroPattern::Row,
            &small_rational(*mu)?,
            &small_rational(*nu)?,
        )),
        Family::OneZeroDiagSigmaEqMu { mu, nu } => Some(exact::lambda_one_zero_entry_exp(
            OneZeroCase::DiagSigmaEqMu,
            &small_rational(*mu)?,
            &small_rational(*nu)?,
        )),
        Family::OneZeroDiagSigmaEqNu { mu, nu } => Some(exact::lambda_one_zero_entry_exp(
            OneZeroCase::DiagSigmaEqNu,
            &small_rational(*mu)?,
            &small_rational(*nu)?,
        )),
        Family::OneZeroOffdiagNuEqMu { mu, tau } => Some(exact::lambda_one_zero_entry_exp(
            OneZeroCase::OffdiagNuEqMu,
            &small_rational(*mu)?,
            &small_rational(*tau)?,
        )),
        Family::OneZeroOffdiagTauEqMu { mu, nu } => Some(exact::lambda_one_zero_entry_exp(
            OneZeroCase::OffdiagTauEqMu,
            &small_rational(*mu)?,
            &small_rational(*nu)?,
        )),
        _ => None,
    }
}
