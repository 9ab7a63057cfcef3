//! Random 2×2 matrix models and their classification.
//!
//! A model assigns an independent law to each entry of the recurrence
//! matrix `A(k)` in `z(k) = A(k) ⊗ z(k−1)`; all sixteen draws across a
//! window of steps are mutually independent, and the matrices are i.i.d.
//! across `k`.  The mean cycle time is invariant under a four-element
//! symmetry group acting on the matrix: transposition (swap the
//! off-diagonal laws), the "swap" that exchanges both diagonal pairs
//! (conjugation by the permutation matrix), and their composition.
//! `classify` searches the orbit of a model under this group for a shape
//! with a known exact solution, so e.g. a model with a zero *column* is
//! solved by transposing it onto the zero *row* formula.

use crate::distributions::{Distribution, InvalidDistribution};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Position names for the four entries, used in diagnostics.
pub const ENTRY_NAMES: [&str; 4] = ["a11", "a12", "a21", "a22"];

/// The four entry laws of the random matrix, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entries {
    pub a11: Distribution,
    pub a12: Distribution,
    pub a21: Distribution,
    pub a22: Distribution,
}

/// A stochastic 2×2 max-plus matrix model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixModel {
    pub entries: Entries,
}

/// Model construction or parse failure.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("entry {entry}: {source}")]
    Entry {
        entry: &'static str,
        source: InvalidDistribution,
    },
    #[error("{0}")]
    Parse(String),
}

impl MatrixModel {
    pub fn new(a11: Distribution, a12: Distribution, a21: Distribution, a22: Distribution) -> Self {
        MatrixModel {
            entries: Entries { a11, a12, a21, a22 },
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> &Distribution {
        match (row, col) {
            (0, 0) => &self.entries.a11,
            (0, 1) => &self.entries.a12,
            (1, 0) => &self.entries.a21,
            (1, 1) => &self.entries.a22,
            _ => panic!("entry index out of range: ({row}, {col})"),
        }
    }

    pub fn entries_array(&self) -> [&Distribution; 4] {
        [
            &self.entries.a11,
            &self.entries.a12,
            &self.entries.a21,
            &self.entries.a22,
        ]
    }

    /// Validate all four entry laws, naming the offending entry on failure.
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, d) in ENTRY_NAMES.iter().zip(self.entries_array()) {
            d.validate().map_err(|source| ModelError::Entry {
                entry: name,
                source,
            })?;
        }
        Ok(())
    }

    /// Parse and validate a model from its JSON encoding.
    ///
    /// The error message names the offending entry when one of the four
    /// laws is malformed.
    pub fn from_json_str(s: &str) -> Result<MatrixModel, ModelError> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| ModelError::Parse(format!("invalid JSON: {e}")))?;
        let entries = value
            .get("entries")
            .ok_or_else(|| ModelError::Parse("missing \"entries\" object".into()))?;
        let obj = entries
            .as_object()
            .ok_or_else(|| ModelError::Parse("\"entries\" must be an object".into()))?;
        for key in obj.keys() {
            if !ENTRY_NAMES.contains(&key.as_str()) {
                return Err(ModelError::Parse(format!(
                    "unknown entry \"{key}\": the matrix is 2x2 (a11, a12, a21, a22)"
                )));
            }
        }
        let mut parsed = Vec::with_capacity(4);
        for name in ENTRY_NAMES {
            let v = entries
                .get(name)
                .ok_or_else(|| ModelError::Parse(format!("entry {name}: missing")))?;
            let d = Distribution::deserialize(v)
                .map_err(|e| ModelError::Parse(format!("entry {name}: {e}")))?;
            parsed.push(d);
        }
        let model = MatrixModel::new(
            parsed.remove(0),
            parsed.remove(0),
            parsed.remove(0),
            parsed.remove(0),
        );
        model.validate()?;
        Ok(model)
    }
}

/// The symmetry group of the mean cycle time (Klein four-group).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    Identity,
    /// Exchange the off-diagonal laws: `[[α,β],[γ,δ]] → [[α,γ],[β,δ]]`.
    Transpose,
    /// Conjugate by the coordinate swap: `[[α,β],[γ,δ]] → [[δ,γ],[β,α]]`.
    Swap,
    /// Both of the above: `[[α,β],[γ,δ]] → [[δ,β],[γ,α]]`.
    TransposeSwap,
}

impl Transform {
    pub const ALL: [Transform; 4] = [
        Transform::Identity,
        Transform::Transpose,
        Transform::Swap,
        Transform::TransposeSwap,
    ];
}

impl std::fmt::Display for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Transform::Identity => "identity",
            Transform::Transpose => "transpose",
            Transform::Swap => "swap",
            Transform::TransposeSwap => "transpose_swap",
        };
        f.write_str(s)
    }
}

/// Apply a symmetry to a model, producing an equivalent model with the
/// same mean cycle time.
pub fn transform_apply(m: &MatrixModel, g: Transform) -> MatrixModel {
    let e = &m.entries;
    let (a11, a12, a21, a22) = match g {
        Transform::Identity => (&e.a11, &e.a12, &e.a21, &e.a22),
        Transform::Transpose => (&e.a11, &e.a21, &e.a12, &e.a22),
        Transform::Swap => (&e.a22, &e.a21, &e.a12, &e.a11),
        Transform::TransposeSwap => (&e.a22, &e.a12, &e.a21, &e.a11),
    };
    MatrixModel::new(a11.clone(), a12.clone(), a21.clone(), a22.clone())
}

/// A model shape with a known exact solution route, with parameters read
/// off the canonical orientation of the shape.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// All four entries i.i.d. Exponential(μ).
    IidExponential { mu: f64 },
    /// All four entries i.i.d. Uniform[0, 1] (tabulated constant, 3 decimals).
    IidUniform01,
    /// All four entries i.i.d. Bernoulli(p).
    IidBernoulli { p: f64 },
    /// All four entries i.i.d. Geometric(p).
    IidGeometric { p: f64 },
    /// All four entries i.i.d. DiscreteUniform{0..m}.
    IidDiscreteUniform { m: u32 },
    /// Diagonal entries Exponential(μ), off-diagonal Exponential(ν).
    DiagOffdiagExponential { mu: f64, nu: f64 },
    /// All four entries exponential with arbitrary rates (spectral route).
    PureExponential { mu: f64, nu: f64, sigma: f64, tau: f64 },
    /// `[[Exp(μ), 0], [0, c]]`: one random diagonal entry, constant other.
    ConstDiagOneRandom { mu: f64, c: f64 },
    /// `[[c, Exp(ν)], [0, 0]]`: zero row, constant diagonal entry.
    ZeroRowConstDiag { nu: f64, c: f64 },
    /// `[[F, c], [0, 0]]`: zero row, general random diagonal entry.
    ZeroRowGeneral { f: Distribution, c: f64 },
    /// `[[Exp(μ), c], [c, c]]`: three equal constants, one exponential.
    ThreeConstSymmetric { mu: f64, c: f64 },
    /// `[[Exp(μ), 0], [0, Exp(τ)]]`.
    ZeroOffdiag { mu: f64, tau: f64 },
    /// `[[0, Exp(ν)], [Exp(σ), 0]]`.
    ZeroDiag { nu: f64, sigma: f64 },
    /// `[[Exp(μ), Exp(ν)], [0, 0]]` (zero columns transpose onto this).
    ZeroRow { mu: f64, nu: f64 },
    /// `[[Exp(μ), Exp(ν)], [Exp(μ), 0]]`: one zero diagonal entry, σ = μ.
    OneZeroDiagSigmaEqMu { mu: f64, nu: f64 },
    /// `[[Exp(μ), Exp(ν)], [Exp(ν), 0]]`: one zero diagonal entry, σ = ν.
    OneZeroDiagSigmaEqNu { mu: f64, nu: f64 },
    /// `[[Exp(μ), Exp(μ)], [0, Exp(τ)]]`: one zero off-diagonal entry, ν = μ.
    OneZeroOffdiagNuEqMu { mu: f64, tau: f64 },
    /// `[[Exp(μ), Exp(ν)], [0, Exp(μ)]]`: one zero off-diagonal entry, τ = μ.
    OneZeroOffdiagTauEqMu { mu: f64, nu: f64 },
    /// All four entries have finite integer support (Markov chain route).
    DiscreteFiniteSupport,
    /// No exact route known; Monte Carlo only.
    NoClosedForm,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::IidExponential { .. } => "IidExponential",
            Family::IidUniform01 => "IidUniform01",
            Family::IidBernoulli { .. } => "IidBernoulli",
            Family::IidGeometric { .. } => "IidGeometric",
            Family::IidDiscreteUniform { .. } => "IidDiscreteUniform",
            Family::DiagOffdiagExponential { .. } => "DiagOffdiagExponential",
            Family::PureExponential { .. } => "PureExponential",
            Family::ConstDiagOneRandom { .. } => "ConstDiagOneRandom",
            Family::ZeroRowConstDiag { .. } => "ZeroRowConstDiag",
            Family::ZeroRowGeneral { .. } => "ZeroRowGeneral",
            Family::ThreeConstSymmetric { .. } => "ThreeConstSymmetric",
            Family::ZeroOffdiag { .. } => "ZeroOffdiag",
            Family::ZeroDiag { .. } => "ZeroDiag",
            Family::ZeroRow { .. } => "ZeroRow",
            Family::OneZeroDiagSigmaEqMu { .. } => "OneZeroDiagSigmaEqMu",
            Family::OneZeroDiagSigmaEqNu { .. } => "OneZeroDiagSigmaEqNu",
            Family::OneZeroOffdiagNuEqMu { .. } => "OneZeroOffdiagNuEqMu",
            Family::OneZeroOffdiagTauEqMu { .. } => "OneZeroOffdiagTauEqMu",
            Family::DiscreteFiniteSupport => "DiscreteFiniteSupport",
            Family::NoClosedForm => "NoClosedForm",
        }
    }

    /// Human-readable parameter list, e.g. `mu = 1, c = 0.5`.
    pub fn params_display(&self) -> String {
        match self {
            Family::IidExponential { mu } => format!("mu = {mu}"),
            Family::IidUniform01 => String::new(),
            Family::IidBernoulli { p } | Family::IidGeometric { p } => format!("p = {p}"),
            Family::IidDiscreteUniform { m } => format!("m = {m}"),
            Family::DiagOffdiagExponential { mu, nu } => format!("mu = {mu}, nu = {nu}"),
            Family::PureExponential { mu, nu, sigma, tau } => {
                format!("mu = {mu}, nu = {nu}, sigma = {sigma}, tau = {tau}")
            }
            Family::ConstDiagOneRandom { mu, c } => format!("mu = {mu}, c = {c}"),
            Family::ZeroRowConstDiag { nu, c } => format!("nu = {nu}, c = {c}"),
            Family::ZeroRowGeneral { f, c } => format!("F = {f}, c = {c}"),
            Family::ThreeConstSymmetric { mu, c } => format!("mu = {mu}, c = {c}"),
            Family::ZeroOffdiag { mu, tau } => format!("mu = {mu}, tau = {tau}"),
            Family::ZeroDiag { nu, sigma } => format!("nu = {nu}, sigma = {sigma}"),
            Family::ZeroRow { mu, nu } => format!("mu = {mu}, nu = {nu}"),
            Family::OneZeroDiagSigmaEqMu { mu, nu } | Family::OneZeroDiagSigmaEqNu { mu, nu } => {
                format!("mu = {mu}, nu = {nu}")
            }
            Family::OneZeroOffdiagNuEqMu { mu, tau } => format!("mu = {mu}, tau = {tau}"),
            Family::OneZeroOffdiagTauEqMu { mu, nu } => format!("mu = {mu}, nu = {nu}"),
            Family::DiscreteFiniteSupport | Family::NoClosedForm => String::new(),
        }
    }
}

/// Result of classification: the matched family and the symmetry that maps
/// the input model onto the family's canonical orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticCase {
    pub family: Family,
    pub transform: Transform,
}

fn exp_rate(d: &Distribution) -> Option<f64> {
    match d {
        Distribution::Exponential { rate } => Some(*rate),
        _ => None,
    }
}

fn const_value(d: &Distribution) -> Option<f64> {
    match d {
        Distribution::Constant { value } => Some(*value),
        _ => None,
    }
}

fn is_zero(d: &Distribution) -> bool {
    const_value(d) == Some(0.0)
}

/// One family matcher applied to a model in a fixed orientation.
fn match_family(m: &MatrixModel, rank: usize) -> Option<Family> {
    let e = &m.entries;
    match rank {
        // Exact i.i.d. families.
        0 => {
            let mu = exp_rate(&e.a11)?;
            [&e.a12, &e.a21, &e.a22]
                .iter()
                .all(|d| exp_rate(d) == Some(mu))
                .then_some(Family::IidExponential { mu })
        }
        1 => {
            let u01 = Distribution::Uniform { lo: 0.0, hi: 1.0 };
            m.entries_array()
                .iter()
                .all(|d| **d == u01)
                .then_some(Family::IidUniform01)
        }
        2 => {
            let p = match &e.a11 {
                Distribution::Bernoulli { p } => *p,
                _ => return None,
            };
            m.entries_array()
                .iter()
                .all(|d| **d == Distribution::Bernoulli { p })
                .then_some(Family::IidBernoulli { p })
        }
        3 => {
            let p = match &e.a11 {
                Distribution::Geometric { p } => *p,
                _ => return None,
            };
            m.entries_array()
                .iter()
                .all(|d| **d == Distribution::Geometric { p })
                .then_some(Family::IidGeometric { p })
        }
        4 => {
            let m_ = match &e.a11 {
                Distribution::DiscreteUniform { m } => *m,
                _ => return None,
            };
            m.entries_array()
                .iter()
                .all(|d| **d == Distribution::DiscreteUniform { m: m_ })
                .then_some(Family::IidDiscreteUniform { m: m_ })
        }
        // Exponential patterns with shared rates.
        5 => {
            let mu = exp_rate(&e.a11)?;
            let nu = exp_rate(&e.a12)?;
            (exp_rate(&e.a22) == Some(mu) && exp_rate(&e.a21) == Some(nu))
                .then_some(Family::DiagOffdiagExponential { mu, nu })
        }
        6 => {
            let mu = exp_rate(&e.a11)?;
            let nu = exp_rate(&e.a12)?;
            let sigma = exp_rate(&e.a21)?;
            let tau = exp_rate(&e.a22)?;
            Some(Family::PureExponential { mu, nu, sigma, tau })
        }
        // Constant-entry families.
        7 => {
            let mu = exp_rate(&e.a11)?;
            let c = const_value(&e.a22)?;
            (is_zero(&e.a12) && is_zero(&e.a21)).then_some(Family::ConstDiagOneRandom { mu, c })
        }
        8 => {
            let c = const_value(&e.a11)?;
            let nu = exp_rate(&e.a12)?;
            (is_zero(&e.a21) && is_zero(&e.a22)).then_some(Family::ZeroRowConstDiag { nu, c })
        }
        9 => {
            let mu = exp_rate(&e.a11)?;
            let c = const_value(&e.a12)?;
            (const_value(&e.a21) == Some(c) && const_value(&e.a22) == Some(c))
                .then_some(Family::ThreeConstSymmetric { mu, c })
        }
        10 => {
            let c = const_value(&e.a12)?;
            (is_zero(&e.a21) && is_zero(&e.a22)).then_some(Family::ZeroRowGeneral {
                f: e.a11.clone(),
                c,
            })
        }
        // Zero-entry exponential patterns.
        11 => {
            let mu = exp_rate(&e.a11)?;
            let tau = exp_rate(&e.a22)?;
            (is_zero(&e.a12) && is_zero(&e.a21)).then_some(Family::ZeroOffdiag { mu, tau })
        }
        12 => {
            let nu = exp_rate(&e.a12)?;
            let sigma = exp_rate(&e.a21)?;
            (is_zero(&e.a11) && is_zero(&e.a22)).then_some(Family::ZeroDiag { nu, sigma })
        }
        13 => {
            let mu = exp_rate(&e.a11)?;
            let nu = exp_rate(&e.a12)?;
            (is_zero(&e.a21) && is_zero(&e.a22)).then_some(Family::ZeroRow { mu, nu })
        }
        // One-zero-entry special cases.
        14 => {
            let mu = exp_rate(&e.a11)?;
            let nu = exp_rate(&e.a12)?;
            let sigma = exp_rate(&e.a21)?;
            if !is_zero(&e.a22) {
                return None;
            }
            if sigma == mu {
                Some(Family::OneZeroDiagSigmaEqMu { mu, nu })
            } else if sigma == nu {
                Some(Family::OneZeroDiagSigmaEqNu { mu, nu })
            } else {
                None
            }
        }
        15 => {
            let mu = exp_rate(&e.a11)?;
            let nu = exp_rate(&e.a12)?;
            let tau = exp_rate(&e.a22)?;
            if !is_zero(&e.a21) {
                return None;
            }
            if nu == mu {
                Some(Family::OneZeroOffdiagNuEqMu { mu, tau })
            } else if tau == mu {
                Some(Family::OneZeroOffdiagTauEqMu { mu, nu })
            } else {
                None
            }
        }
        // Finite integer support: exact Markov chain on the coordinate
        // difference.
        16 => m
            .entries_array()
            .iter()
            .all(|d| {
                d.finite_atoms()
                    .map(|atoms| atoms.iter().all(|(v, _)| v.fract() == 0.0))
                    .unwrap_or(false)
            })
            .then_some(Family::DiscreteFiniteSupport),
        _ => None,
    }
}

/// Number of matcher ranks tried by `classify`, in priority order.
const FAMILY_RANKS: usize = 17;

/// Find the highest-priority exactly solvable shape in the symmetry orbit
/// of `m`.
///
/// Matchers are tried family-major (every symmetry of one family before
/// the next family), so the matched family is invariant under
/// transforming the input: `classify(transform_apply(m, g)).family ==
/// classify(m).family` for every `g`.  Parameter matching is exact; e.g.
/// rates must be bit-equal for two entries to count as sharing a rate.
pub fn classify(m: &MatrixModel) -> AnalyticCase {
    for rank in 0..FAMILY_RANKS {
        for g in Transform::ALL {
            let oriented = transform_apply(m, g);
            if let Some(family) = match_family(&oriented, rank) {
                return AnalyticCase {
                    family,
                    transform: g,
                };
            }
        }
    }
    AnalyticCase {
        family: Family::NoClosedForm,
        transform: Transform::Identity,
    }
}
