//! Entry laws for the random matrix entries: sampling, CDFs, and means.
//!
//! Matrix entries model nonnegative activity durations (production times,
//! transmission delays), so every law here has nonnegative support and a
//! finite mean.  The CDF convention throughout the crate is the
//! left-continuous `F(t) = P{X < t}`: laws with atoms (constants, discrete
//! laws) put the jump *after* the atom, so `Constant(2).cdf(2) == 0` and
//! `Constant(2).cdf(2 + ε) == 1`.  This matters when increments of the
//! system accumulate point masses at constant entry values.
//!
//! The geometric law uses the support `{0, 1, 2, …}` with
//! `P{X = k} = (1 − p)·pᵏ`, which is the convention validated against the
//! exact Markov-chain solver (see the `chain` module tests).

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Validation failure for a distribution's parameters.
#[derive(Debug, Error, PartialEq)]
#[error("{dist} distribution: {reason}")]
pub struct InvalidDistribution {
    pub dist: &'static str,
    pub reason: String,
}

fn invalid(dist: &'static str, reason: impl Into<String>) -> InvalidDistribution {
    InvalidDistribution {
        dist,
        reason: reason.into(),
    }
}

/// The law of one matrix entry.
///
/// The JSON encoding is internally tagged on `dist`, e.g.
/// `{"dist": "exponential", "rate": 1.0}` or
/// `{"dist": "tabulated_cdf", "t": [0, 1], "F": [0, 1]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "snake_case", deny_unknown_fields)]
pub enum Distribution {
    /// Degenerate law: the entry always equals `value` (≥ 0).
    Constant { value: f64 },
    /// Exponential with the given rate; mean `1/rate`.
    Exponential { rate: f64 },
    /// Continuous uniform on `[lo, hi]`, `0 ≤ lo < hi`.
    Uniform { lo: f64, hi: f64 },
    /// Bernoulli on `{0, 1}` with `P{X = 1} = p`.
    Bernoulli { p: f64 },
    /// Geometric on `{0, 1, 2, …}` with `P{X = k} = (1 − p)·pᵏ`, `p ∈ [0, 1)`.
    Geometric { p: f64 },
    /// Discrete uniform on `{0, 1, …, m}`.
    DiscreteUniform { m: u32 },
    /// Piecewise-linear CDF through the points `(t[i], F[i])`.
    ///
    /// `t` is strictly ascending and nonnegative; `F` is nondecreasing,
    /// starts ≥ 0, and ends at exactly 1.  A positive `F[0]` is an atom of
    /// that mass at `t[0]`.
    TabulatedCdf {
        t: Vec<f64>,
        #[serde(rename = "F")]
        cdf: Vec<f64>,
    },
}

impl Distribution {
    /// Check the parameter constraints listed on each variant.
    pub fn validate(&self) -> Result<(), InvalidDistribution> {
        match self {
            Distribution::Constant { value } => {
                if !value.is_finite() || *value < 0.0 {
                    return Err(invalid("constant", format!("value must be a nonnegative real, got {value}")));
                }
            }
            Distribution::Exponential { rate } => {
                if !rate.is_finite() || *rate <= 0.0 {
                    return Err(invalid("exponential", format!("rate must be positive, got {rate}")));
                }
            }
            Distribution::Uniform { lo, hi } => {
                if !lo.is_finite() || !hi.is_finite() || *lo < 0.0 || lo >= hi {
                    return Err(invalid("uniform", format!("bounds must satisfy 0 <= lo < hi, got [{lo}, {hi}]")));
                }
            }
            Distribution::Bernoulli { p } => {
                if !p.is_finite() || !(0.0..=1.0).contains(p) {
                    return Err(invalid("bernoulli", format!("p must lie in [0, 1], got {p}")));
                }
            }
            Distribution::Geometric { p } => {
                if !p.is_finite() || !(0.0..1.0).contains(p) {
                    return Err(invalid("geometric", format!("p must lie in [0, 1), got {p}")));
                }
            }
            Distribution::DiscreteUniform { .. } => {}
            Distribution::TabulatedCdf { t, cdf } => {
                if t.len() != cdf.len() {
                    return Err(invalid("tabulated_cdf", format!("t has {} points but F has {}", t.len(), cdf.len())));
                }
                if t.len() < 2 {
                    return Err(invalid("tabulated_cdf", "need at least two breakpoints"));
                }
                if t.iter().any(|v| !v.is_finite()) || t[0] < 0.0 {
                    return Err(invalid("tabulated_cdf", "breakpoints must be finite and nonnegative"));
                }
                if t.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(invalid("tabulated_cdf", "breakpoints must be strictly ascending"));
                }
                if cdf.iter().any(|v| !v.is_finite()) || cdf[0] < 0.0 {
                    return Err(invalid("tabulated_cdf", "F values must be finite and start >= 0"));
                }
                if cdf.windows(2).any(|w| w[0] > w[1]) {
                    return Err(invalid("tabulated_cdf", "F values must be nondecreasing"));
                }
                if *cdf.last().unwrap() != 1.0 {
                    return Err(invalid("tabulated_cdf", format!("F must end at 1, got {}", cdf.last().unwrap())));
                }
            }
        }
        Ok(())
    }

    /// The left-continuous CDF `P{X < t}`.
    pub fn cdf(&self, t: f64) -> f64 {
        match self {
            Distribution::Constant { value } => {
                if t > *value {
                    1.0
                } else {
                    0.0
                }
            }
            Distribution::Exponential { rate } => {
                if t <= 0.0 {
                    0.0
                } else {
                    -(-rate * t).exp_m1()
                }
            }
            Distribution::Uniform { lo, hi } => ((t - lo) / (hi - lo)).clamp(0.0, 1.0),
            Distribution::Bernoulli { p } => {
                if t <= 0.0 {
                    0.0
                } else if t <= 1.0 {
                    1.0 - p
                } else {
                    1.0
                }
            }
            Distribution::Geometric { p } => {
                // P{X < t} = P{X ≤ ⌈t⌉ − 1} = 1 − p^⌈t⌉ for t > 0.
                if t <= 0.0 {
                    0.0
                } else if *p == 0.0 {
                    1.0
                } else {
                    1.0 - p.powf(t.ceil())
                }
            }
            Distribution::DiscreteUniform { m } => {
                if t <= 0.0 {
                    0.0
                } else {
                    (t.ceil() / (*m as f64 + 1.0)).min(1.0)
                }
            }
            Distribution::TabulatedCdf { t: ts, cdf } => {
                if t <= ts[0] {
                    return 0.0;
                }
                if t >= *ts.last().unwrap() {
                    return 1.0;
                }
                let i = ts.partition_point(|&x| x <= t) - 1;
                let w = (t - ts[i]) / (ts[i + 1] - ts[i]);
                cdf[i] + w * (cdf[i + 1] - cdf[i])
            }
        }
    }

    /// One draw from the law.
    ///
    /// Exponential sampling uses the inverse CDF, `X = −ln(U)/rate` with
    /// `U` uniform on `(0, 1]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Distribution::Constant { value } => *value,
            Distribution::Exponential { rate } => {
                let u = 1.0 - rng.random::<f64>(); // in (0, 1]
                -u.ln() / rate
            }
            Distribution::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            Distribution::Bernoulli { p } => {
                if rng.random::<f64>() < *p {
                    1.0
                } else {
                    0.0
                }
            }
            Distribution::Geometric { p } => {
                if *p == 0.0 {
                    return 0.0;
                }
                // P{X ≥ k} = pᵏ, so X = ⌊ln U / ln p⌋ for U in (0, 1].
                let u = 1.0 - rng.random::<f64>();
                (u.ln() / p.ln()).floor()
            }
            Distribution::DiscreteUniform { m } => {
                let n = *m as u64 + 1;
                rng.random_range(0..n) as f64
            }
            Distribution::TabulatedCdf { t, cdf } => {
                let u = rng.random::<f64>();
                if u < cdf[0] {
                    return t[0];
                }
                for i in 0..t.len() - 1 {
                    if u <= cdf[i + 1] && cdf[i + 1] > cdf[i] {
                        let w = (u - cdf[i]).max(0.0) / (cdf[i + 1] - cdf[i]);
                        return t[i] + w * (t[i + 1] - t[i]);
                    }
                }
                *t.last().unwrap()
            }
        }
    }

    /// The exact expectation.
    pub fn mean(&self) -> f64 {
        match self {
            Distribution::Constant { value } => *value,
            Distribution::Exponential { rate } => 1.0 / rate,
            Distribution::Uniform { lo, hi } => 0.5 * (lo + hi),
            Distribution::Bernoulli { p } => *p,
            Distribution::Geometric { p } => p / (1.0 - p),
            Distribution::DiscreteUniform { m } => *m as f64 / 2.0,
            Distribution::TabulatedCdf { t, cdf } => {
                // Atom of mass F[0] at t[0]; each linear segment spreads its
                // mass uniformly, contributing ΔF·(midpoint).
                let mut acc = cdf[0] * t[0];
                for i in 0..t.len() - 1 {
                    acc += (cdf[i + 1] - cdf[i]) * 0.5 * (t[i] + t[i + 1]);
                }
                acc
            }
        }
    }

    /// The finite support as `(value, probability)` pairs in ascending
    /// order, or `None` when the support is infinite or continuous.
    ///
    /// Zero-probability atoms are dropped, so `Bernoulli(0)` is `[(0, 1)]`.
    pub fn finite_atoms(&self) -> Option<Vec<(f64, f64)>> {
        match self {
            Distribution::Constant { value } => Some(vec![(*value, 1.0)]),
            Distribution::Bernoulli { p } => {
                let mut atoms = Vec::new();
                if *p < 1.0 {
                    atoms.push((0.0, 1.0 - p));
                }
                if *p > 0.0 {
                    atoms.push((1.0, *p));
                }
                Some(atoms)
            }
            Distribution::Geometric { p } => {
                if *p == 0.0 {
                    Some(vec![(0.0, 1.0)])
                } else {
                    None
                }
            }
            Distribution::DiscreteUniform { m } => {
                let q = 1.0 / (*m as f64 + 1.0);
                Some((0..=*m).map(|k| (k as f64, q)).collect())
            }
            Distribution::Exponential { .. }
            | Distribution::Uniform { .. }
            | Distribution::TabulatedCdf { .. } => None,
        }
    }

    /// The essential supremum of the support, or `None` when unbounded.
    pub fn sup_support(&self) -> Option<f64> {
        match self {
            Distribution::Constant { value } => Some(*value),
            Distribution::Exponential { .. } => None,
            Distribution::Uniform { hi, .. } => Some(*hi),
            Distribution::Bernoulli { p } => Some(if *p > 0.0 { 1.0 } else { 0.0 }),
            Distribution::Geometric { p } => {
                if *p == 0.0 {
                    Some(0.0)
                } else {
                    None
                }
            }
            Distribution::DiscreteUniform { m } => Some(*m as f64),
            Distribution::TabulatedCdf { t, cdf } => {
                let i = cdf.iter().position(|&v| v >= 1.0).unwrap_or(t.len() - 1);
                Some(t[i])
            }
        }
    }

    /// Points in `[lo, hi]` where `t ↦ cdf(t)` may be non-smooth (jumps or
    /// kinks), for breakpoint-aware quadrature.
    pub fn breakpoints_within(&self, lo: f64, hi: f64) -> Vec<f64> {
        let pts: Vec<f64> = match self {
            Distribution::Constant { value } => vec![*value],
            Distribution::Exponential { .. } => vec![0.0],
            Distribution::Uniform { lo: a, hi: b } => vec![*a, *b],
            Distribution::Bernoulli { .. } => vec![0.0, 1.0],
            Distribution::Geometric { .. } | Distribution::DiscreteUniform { .. } => {
                // Jumps at every integer support point in range.
                let lo_k = lo.ceil().max(0.0);
                let hi_k = match self {
                    Distribution::DiscreteUniform { m } => hi.floor().min(*m as f64),
                    _ => hi.floor(),
                };
                let mut v = Vec::new();
                let mut k = lo_k;
                while k <= hi_k {
                    v.push(k);
                    k += 1.0;
                }
                v
            }
            Distribution::TabulatedCdf { t, .. } => t.clone(),
        };
        pts.into_iter().filter(|p| *p >= lo && *p <= hi).collect()
    }

    /// Short lowercase name of the variant (matches the JSON tag).
    pub fn kind_name(&self) -> &'static str {
        match self {
            Distribution::Constant { .. } => "constant",
            Distribution::Exponential { .. } => "exponential",
            Distribution::Uniform { .. } => "uniform",
            Distribution::Bernoulli { .. } => "bernoulli",
            Distribution::Geometric { .. } => "geometric",
            Distribution::DiscreteUniform { .. } => "discrete_uniform",
            Distribution::TabulatedCdf { .. } => "tabulated_cdf",
        }
    }
}

impl std::fmt::Display for Distribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distribution::Constant { value } => write!(f, "constant({value})"),
            Distribution::Exponential { rate } => write!(f, "exponential(rate = {rate})"),
            Distribution::Uniform { lo, hi } => write!(f, "uniform[{lo}, {hi}]"),
            Distribution::Bernoulli { p } => write!(f, "bernoulli(p = {p})"),
            Distribution::Geometric { p } => write!(f, "geometric(p = {p})"),
            Distribution::DiscreteUniform { m } => write!(f, "discrete_uniform{{0..{m}}}"),
            Distribution::TabulatedCdf { t, .. } => {
                write!(f, "tabulated_cdf({} points)", t.len())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn exp1() -> Distribution {
        Distribution::Exponential { rate: 1.0 }
    }

    #[test]
    fn validate_accepts_all_reference_laws() {
        let laws = vec![
            Distribution::Constant { value: 0.0 },
            Distribution::Constant { value: 2.5 },
            exp1(),
            Distribution::Uniform { lo: 0.0, hi: 1.0 },
            Distribution::Bernoulli { p: 0.5 },
            Distribution::Geometric { p: 0.5 },
            Distribution::DiscreteUniform { m: 2 },
            Distribution::TabulatedCdf {
                t: vec![0.0, 1.0, 2.0],
                cdf: vec![0.25, 0.5, 1.0],
            },
        ];
        for d in laws {
            d.validate().unwrap_or_else(|e| panic!("{d}: {e}"));
        }
    }

    #[test]
    fn validate_rejects_bad_parameters() {
        let bad = vec![
            Distribution::Constant { value: -1.0 },
            Distribution::Exponential { rate: 0.0 },
            Distribution::Exponential { rate: -2.0 },
            Distribution::Uniform { lo: 1.0, hi: 1.0 },
            Distribution::Uniform { lo: -0.5, hi: 1.0 },
            Distribution::Bernoulli { p: 1.5 },
            Distribution::Geometric { p: 1.0 },
            Distribution::TabulatedCdf {
                t: vec![0.0, 1.0],
                cdf: vec![0.0, 0.5],
            },
            Distribution::TabulatedCdf {
                t: vec![1.0, 0.0],
                cdf: vec![0.0, 1.0],
            },
            Distribution::TabulatedCdf {
                t: vec![0.0, 1.0],
                cdf: vec![0.5, 0.25],
            },
        ];
        for d in bad {
            assert!(d.validate().is_err(), "{d} should be invalid");
        }
    }

    #[test]
    fn cdf_is_left_continuous_at_atoms() {
        let c = Distribution::Constant { value: 2.0 };
        assert_eq!(c.cdf(2.0), 0.0);
        assert_eq!(c.cdf(2.0001), 1.0);

        let b = Distribution::Bernoulli { p: 0.3 };
        assert_eq!(b.cdf(0.0), 0.0);
        assert!((b.cdf(0.5) - 0.7).abs() < 1e-15);
        assert!((b.cdf(1.0) - 0.7).abs() < 1e-15);
        assert_eq!(b.cdf(1.0001), 1.0);
    }

    #[test]
    fn cdf_reference_values() {
        assert!((exp1().cdf(1.0) - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        let u = Distribution::Uniform { lo: 0.0, hi: 1.0 };
        assert_eq!(u.cdf(0.25), 0.25);
        // Geometric: P{X < 1} = P{X = 0} = 1 − p.
        let g = Distribution::Geometric { p: 0.5 };
        assert!((g.cdf(1.0) - 0.5).abs() < 1e-15);
        assert!((g.cdf(1.5) - 0.75).abs() < 1e-15);
        // Discrete uniform m=2: P{X < 2} = 2/3.
        let d = Distribution::DiscreteUniform { m: 2 };
        assert!((d.cdf(2.0) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(d.cdf(2.5), 1.0);
    }

    #[test]
    fn tabulated_cdf_interpolates() {
        let d = Distribution::TabulatedCdf {
            t: vec![0.0, 2.0],
            cdf: vec![0.0, 1.0],
        };
        assert_eq!(d.cdf(-1.0), 0.0);
        assert_eq!(d.cdf(0.0), 0.0);
        assert!((d.cdf(0.5) - 0.25).abs() < 1e-15);
        assert_eq!(d.cdf(2.0), 1.0);
        assert_eq!(d.cdf(3.0), 1.0);
        assert!((d.mean() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tabulated_cdf_atom_at_origin() {
        // Atom of mass 0.5 at 0, then uniform mass on [0, 1].
        let d = Distribution::TabulatedCdf {
            t: vec![0.0, 1.0],
            cdf: vec![0.5, 1.0],
        };
        assert_eq!(d.cdf(0.0), 0.0);
        assert!((d.cdf(0.5) - 0.75).abs() < 1e-15);
        assert!((d.mean() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn means_match_formulas() {
        assert_eq!(Distribution::Exponential { rate: 2.0 }.mean(), 0.5);
        assert_eq!(Distribution::DiscreteUniform { m: 2 }.mean(), 1.0);
        assert_eq!(Distribution::Geometric { p: 0.5 }.mean(), 1.0);
        assert_eq!(Distribution::Uniform { lo: 0.0, hi: 1.0 }.mean(), 0.5);
        assert_eq!(Distribution::Bernoulli { p: 0.25 }.mean(), 0.25);
    }

    #[test]
    fn finite_atoms_enumerate_support() {
        assert_eq!(
            Distribution::Constant { value: 2.5 }.finite_atoms(),
            Some(vec![(2.5, 1.0)])
        );
        assert_eq!(
            Distribution::Bernoulli { p: 0.0 }.finite_atoms(),
            Some(vec![(0.0, 1.0)])
        );
        let du = Distribution::DiscreteUniform { m: 1 }.finite_atoms().unwrap();
        assert_eq!(du.len(), 2);
        assert!((du[0].1 - 0.5).abs() < 1e-15);
        assert!(exp1().finite_atoms().is_none());
        assert!(Distribution::Geometric { p: 0.5 }.finite_atoms().is_none());
        assert_eq!(
            Distribution::Geometric { p: 0.0 }.finite_atoms(),
            Some(vec![(0.0, 1.0)])
        );
    }

    #[test]
    fn sample_mean_within_three_standard_errors() {
        let n = 100_000;
        let laws = vec![
            exp1(),
            Distribution::Exponential { rate: 2.0 },
            Distribution::Uniform { lo: 0.0, hi: 1.0 },
            Distribution::Bernoulli { p: 0.5 },
            Distribution::Geometric { p: 0.5 },
            Distribution::DiscreteUniform { m: 1 },
            Distribution::DiscreteUniform { m: 2 },
            Distribution::TabulatedCdf {
                t: vec![0.0, 1.0, 3.0],
                cdf: vec![0.2, 0.6, 1.0],
            },
        ];
        for (i, d) in laws.iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
            let xs: Vec<f64> = (0..n).map(|_| d.sample(&mut rng)).collect();
            let mean = xs.iter().sum::<f64>() / n as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            let se = (var / n as f64).sqrt();
            let want = d.mean();
            assert!(
                (mean - want).abs() <= 3.0 * se.max(1e-12),
                "{d}: sample mean {mean} vs {want} (se {se})"
            );
        }
    }

    #[test]
    fn discrete_uniform_frequency_of_one() {
        // Law-of-large-numbers check on DiscreteUniform(1).
        let d = Distribution::DiscreteUniform { m: 1 };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000;
        let ones = (0..n).filter(|_| d.sample(&mut rng) == 1.0).count();
        let freq = ones as f64 / n as f64;
        let se = (0.25f64 / n as f64).sqrt();
        assert!((freq - 0.5).abs() <= 3.0 * se, "freq {freq}");
    }

    /// Empirical CDF within the 99% Kolmogorov-Smirnov band of the law's
    /// CDF.  Probes are placed at continuity points and just after atoms,
    /// where the left-continuous empirical count `#{x < t}/n` is a binomial
    /// proportion with mean `cdf(t)`; the KS band bounds all of them at
    /// once.
    #[test]
    fn empirical_cdf_within_ks_band() {
        let n = 100_000usize;
        let band = 1.628 / (n as f64).sqrt(); // 99% asymptotic KS quantile
        let laws = vec![
            exp1(),
            Distribution::Uniform { lo: 0.5, hi: 2.0 },
            Distribution::Bernoulli { p: 0.3 },
            Distribution::Geometric { p: 0.6 },
            Distribution::DiscreteUniform { m: 3 },
            Distribution::TabulatedCdf {
                t: vec![0.0, 0.5, 2.0],
                cdf: vec![0.1, 0.1, 1.0],
            },
        ];
        for (i, d) in laws.iter().enumerate() {
            let mut rng = ChaCha8Rng::seed_from_u64(2000 + i as u64);
            let mut xs: Vec<f64> = (0..n).map(|_| d.sample(&mut rng)).collect();
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let probes: Vec<f64> = (0..=200)
                .flat_map(|j| {
                    let t = -0.5 + j as f64 * 0.05;
                    [t, t + 1e-9]
                })
                .collect();
            for t in probes {
                let emp = xs.partition_point(|&x| x < t) as f64 / n as f64;
                let want = d.cdf(t);
                assert!(
                    (emp - want).abs() <= band,
                    "{d} at t={t}: empirical {emp} vs cdf {want} (band {band})"
                );
            }
        }
    }

    #[test]
    fn sup_support_and_breakpoints() {
        assert_eq!(exp1().sup_support(), None);
        assert_eq!(Distribution::Constant { value: 2.0 }.sup_support(), Some(2.0));
        assert_eq!(Distribution::Uniform { lo: 0.0, hi: 3.0 }.sup_support(), Some(3.0));
        assert_eq!(Distribution::Bernoulli { p: 0.0 }.sup_support(), Some(0.0));
        assert_eq!(Distribution::DiscreteUniform { m: 4 }.sup_support(), Some(4.0));
        let tab = Distribution::TabulatedCdf {
            t: vec![0.0, 1.0, 2.0],
            cdf: vec![0.0, 1.0, 1.0],
        };
        assert_eq!(tab.sup_support(), Some(1.0));

        assert_eq!(
            Distribution::DiscreteUniform { m: 2 }.breakpoints_within(0.0, 10.0),
            vec![0.0, 1.0, 2.0]
        );
        assert_eq!(
            Distribution::Geometric { p: 0.5 }.breakpoints_within(0.5, 3.2),
            vec![1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn json_round_trip_matches_schema() {
        let d: Distribution = serde_json::from_str(r#"{"dist":"exponential","rate":1.0}"#).unwrap();
        assert_eq!(d, exp1());
        let d: Distribution =
            serde_json::from_str(r#"{"dist":"tabulated_cdf","t":[0,1],"F":[0,1]}"#).unwrap();
        assert!(matches!(d, Distribution::TabulatedCdf { .. }));
        let d: Distribution = serde_json::from_str(r#"{"dist":"discrete_uniform","m":2}"#).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: Distribution = serde_json::from_str(&s).unwrap();
        assert_eq!(d, back);
        assert!(serde_json::from_str::<Distribution>(r#"{"dist":"normal","mu":0}"#).is_err());
    }
}
