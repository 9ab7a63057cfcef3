//! Exact mean cycle times for discrete entry laws via a Markov chain on
//! the coordinate difference.
//!
//! For `z(k) = A(k) ⊗ z(k−1)` the difference `Y(k) = z₂(k) − z₁(k)` is a
//! Markov chain: with `Y = Y(k−1)` and entry draws `α, β, γ, δ`,
//!
//! ```text
//! X(k) = max(α, β + Y)          (increment of the first coordinate)
//! Y(k) = max(γ, δ + Y) − X(k)
//! ```
//!
//! When every entry law has finite support the chain lives on finitely
//! many states, and the mean cycle time is the stationary expectation of
//! the increment: `λ = Σ_y π(y) · E[max(α, β + y)]`.  Geometric entries
//! are included by truncating at the `1 − 1e−12` quantile and moving the
//! tail mass onto the last atom.
//!
//! The two maxima above share no randomness (`α, β` against `γ, δ`), so
//! the one-step law is assembled from the two *marginal* maximum
//! distributions — `|A|+|B|` atoms each via a sorted merge — instead of
//! enumerating the four-fold product of entry atoms.

use crate::analytic::Rate;
use crate::distributions::Distribution;
use crate::model::{MatrixModel, ENTRY_NAMES};
use crate::numerics::{self, NumericsError};
use std::collections::HashMap;
use thiserror::Error;

/// Hard cap on the number of difference states.
pub const STATE_LIMIT: usize = 100_000;

/// Tail probability at which geometric entries are truncated.
const GEOMETRIC_TAIL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ChainError {
    /// An entry law does not have finite support (and is not geometric).
    #[error("entry {entry} has no finite support: {law}")]
    UnsupportedEntry { entry: &'static str, law: String },
    /// The reachable difference support exceeds [`STATE_LIMIT`].
    #[error("difference chain support exceeds {limit} states ({states} reached)")]
    SupportExplosion { states: usize, limit: usize },
    /// The reachable states contain more than one closed communicating
    /// class, so the stationary law (hence λ) is not unique.
    #[error("difference chain has {count} closed communicating classes")]
    MultipleRecurrentClasses { count: usize },
    /// The stationary solve left a residual too large to trust.
    #[error("stationary distribution residual {residual:.3e} is too large")]
    StationaryResidual { residual: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// The finite Markov chain of coordinate differences.
#[derive(Clone, Debug)]
pub struct DifferenceChain {
    /// Difference values, indexed by state; `support[0] == 0`.
    pub support: Vec<f64>,
    /// Sparse transition rows: `rows[i]` lists `(target, probability)`
    /// with probabilities summing to 1.
    pub rows: Vec<Vec<(usize, f64)>>,
    /// Expected first-coordinate increment `E[max(α, β + y)]` per state.
    pub step_mean: Vec<f64>,
}

impl DifferenceChain {
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Canonical integer key for a difference value: values agreeing to 1e−9
/// are the same state.
fn canon(v: f64) -> i64 {
    (v * 1e9).round() as i64
}

/// Atoms of an entry law, truncating geometric tails.
fn entry_atoms(entry: &'static str, d: &Distribution) -> Result<Vec<(f64, f64)>, ChainError> {
    if let Some(atoms) = d.finite_atoms() {
        return Ok(atoms);
    }
    if let Distribution::Geometric { p } = d {
        // Emit exact masses while the remaining tail exceeds the cutoff,
        // then place the whole tail p^K on the final atom K.  Project the
        // truncation point first so a p close to 1 fails fast instead of
        // materializing millions of atoms.
        let projected = GEOMETRIC_TAIL.ln() / p.ln();
        if !projected.is_finite() || projected > STATE_LIMIT as f64 {
            return Err(ChainError::SupportExplosion {
                states: projected as usize,
                limit: STATE_LIMIT,
            });
        }
        let mut atoms = Vec::new();
        let mut k = 0u32;
        let mut pk = 1.0_f64; // p^k
        while pk * p > GEOMETRIC_TAIL {
            atoms.push((k as f64, (1.0 - p) * pk));
            k += 1;
            pk *= p;
        }
        atoms.push((k as f64, pk));
        return Ok(atoms);
    }
    Err(ChainError::UnsupportedEntry {
        entry,
        law: d.to_string(),
    })
}

/// Law of `max(α, β + shift)` from the marginal atom lists, by a sorted
/// merge over the union of candidate values: `P{max = v} =
/// P{α ≤ v}P{β+s ≤ v} − P{α < v}P{β+s < v}`.
fn max_dist(a: &[(f64, f64)], b: &[(f64, f64)], shift: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let (mut fa, mut fb) = (0.0_f64, 0.0_f64);
    while i < a.len() || j < b.len() {
        let ka = if i < a.len() { canon(a[i].0) } else { i64::MAX };
        let kb = if j < b.len() {
            canon(b[j].0 + shift)
        } else {
            i64::MAX
        };
        let k = ka.min(kb);
        let mut v = 0.0;
        let mut pa = 0.0;
        let mut pb = 0.0;
        if ka == k {
            v = a[i].0;
            pa = a[i].1;
            i += 1;
        }
        if kb == k {
            v = b[j].0 + shift;
            pb = b[j].1;
            j += 1;
        }
        let mass = (fa + pa) * (fb + pb) - fa * fb;
        if mass > 0.0 {
            out.push((v, mass));
        }
        fa += pa;
        fb += pb;
    }
    out
}

/// Build the reachable difference chain of a discrete model by
/// breadth-first closure from `Y = 0`.
pub fn build_chain(m: &MatrixModel) -> Result<DifferenceChain, ChainError> {
    let mut atoms = Vec::with_capacity(4);
    for (name, d) in ENTRY_NAMES.iter().zip(m.entries_array()) {
        atoms.push(entry_atoms(name, d)?);
    }
    let (alpha, beta, gamma, delta) = (&atoms[0], &atoms[1], &atoms[2], &atoms[3]);

    // Integer-valued supports keep the difference inside [−V, V] where V
    // is the largest atom, so oversized chains can be rejected up front
    // instead of after an expensive closure.
    let all_integer = atoms
        .iter()
        .all(|list| list.iter().all(|(v, _)| v.fract() == 0.0));
    if all_integer {
        let v_max = atoms
            .iter()
            .flat_map(|list| list.iter().map(|(v, _)| *v))
            .fold(0.0_f64, f64::max);
        let bound = 2.0 * v_max + 1.0;
        if bound > STATE_LIMIT as f64 {
            return Err(ChainError::SupportExplosion {
                states: bound as usize,
                limit: STATE_LIMIT,
            });
        }
    }

    let mut index: HashMap<i64, usize> = HashMap::new();
    let mut support = vec![0.0_f64];
    index.insert(canon(0.0), 0);
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut step_mean = Vec::new();

    let mut next = 0usize;
    while next < support.len() {
        let y = support[next];
        let m1 = max_dist(alpha, beta, y);
        let m2 = max_dist(gamma, delta, y);
        step_mean.push(m1.iter().map(|(v, p)| v * p).sum::<f64>());

        let mut row: HashMap<usize, f64> = HashMap::new();
        for &(v1, p1) in &m1 {
            for &(v2, p2) in &m2 {
                let y_new = v2 - v1;
                let key = canon(y_new);
                let target = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = support.len();
                        if t >= STATE_LIMIT {
                            return Err(ChainError::SupportExplosion {
                                states: t + 1,
                                limit: STATE_LIMIT,
                            });
                        }
                        support.push(y_new);
                        index.insert(key, t);
                        t
                    }
                };
                *row.entry(target).or_insert(0.0) += p1 * p2;
            }
        }
        let mut row: Vec<(usize, f64)> = row.into_iter().collect();
        row.sort_unstable_by_key(|&(t, _)| t);
        rows.push(row);
        next += 1;
    }

    Ok(DifferenceChain {
        support,
        rows,
        step_mean,
    })
}

/// Strongly connected components of the transition graph; returns the
/// component id of each node (iterative Tarjan).
fn components(rows: &[Vec<(usize, f64)>]) -> Vec<usize> {
    let n = rows.len();
    const UNSEEN: usize = usize::MAX;
    let mut comp = vec![UNSEEN; n];
    let mut order = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut next_order = 0usize;
    let mut next_comp = 0usize;

    for start in 0..n {
        if order[start] != UNSEEN {
            continue;
        }
        order[start] = next_order;
        low[start] = next_order;
        next_order += 1;
        stack.push(start);
        on_stack[start] = true;
        frames.push((start, 0));

        while let Some(&(v, cursor)) = frames.last() {
            if cursor < rows[v].len() {
                frames.last_mut().unwrap().1 += 1;
                let (w, p) = rows[v][cursor];
                if p <= 0.0 {
                    continue;
                }
                if order[w] == UNSEEN {
                    order[w] = next_order;
                    low[w] = next_order;
                    next_order += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == order[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Stationary distribution of the chain, supported on its unique closed
/// communicating class (zero on transient states).
///
/// Solves `πP = π, Σπ = 1` on the closed class by replacing the last
/// balance equation with the normalization row.  Fails when more than one
/// closed class is reachable.
pub fn stationary(chain: &DifferenceChain) -> Result<Vec<f64>, ChainError> {
    let n = chain.len();
    let comp = components(&chain.rows);
    let n_comp = comp.iter().copied().max().map_or(0, |c| c + 1);

    // A component is closed when no positive-probability edge leaves it.
    let mut open = vec![false; n_comp];
    for (v, row) in chain.rows.iter().enumerate() {
        for &(w, p) in row {
            if p > 0.0 && comp[w] != comp[v] {
                open[comp[v]] = true;
            }
        }
    }
    let closed: Vec<usize> = (0..n_comp).filter(|&c| !open[c]).collect();
    if closed.len() != 1 {
        return Err(ChainError::MultipleRecurrentClasses {
            count: closed.len(),
        });
    }
    let class = closed[0];
    let members: Vec<usize> = (0..n).filter(|&v| comp[v] == class).collect();
    let local: HashMap<usize, usize> = members
        .iter()
        .enumerate()
        .map(|(loc, &v)| (v, loc))
        .collect();
    let nc = members.len();

    // (Pᵀ − I) restricted to the class, with the last row replaced by the
    // normalization Σπ = 1.
    let mut a = vec![0.0_f64; nc * nc];
    for (loc_v, &v) in members.iter().enumerate() {
        for &(w, p) in &chain.rows[v] {
            if let Some(&loc_w) = local.get(&w) {
                a[loc_w * nc + loc_v] += p;
            }
        }
    }
    for i in 0..nc {
        a[i * nc + i] -= 1.0;
    }
    for j in 0..nc {
        a[(nc - 1) * nc + j] = 1.0;
    }
    let mut b = vec![0.0; nc];
    b[nc - 1] = 1.0;
    let pi_local = numerics::solve(a, b, nc)?;

    // Clamp solver noise and renormalize exactly.
    let mut pi = vec![0.0; n];
    let mut total = 0.0;
    for (loc, &v) in members.iter().enumerate() {
        let p = pi_local[loc].max(0.0);
        pi[v] = p;
        total += p;
    }
    for p in pi.iter_mut() {
        *p /= total;
    }

    // Residual check of the balance equations.
    let mut residual = 0.0_f64;
    let mut flow = vec![0.0; n];
    for (v, row) in chain.rows.iter().enumerate() {
        for &(w, p) in row {
            flow[w] += pi[v] * p;
        }
    }
    for v in 0..n {
        residual = residual.max((flow[v] - pi[v]).abs());
    }
    if residual > 1e-8 {
        return Err(ChainError::StationaryResidual { residual });
    }
    Ok(pi)
}

/// Exact mean cycle time of a model whose entries all have finite (or
/// truncated geometric) support.
pub fn lambda_discrete(m: &MatrixModel) -> Result<Rate, ChainError> {
    let chain = build_chain(m)?;
    let pi = stationary(&chain)?;
    let lambda = pi
        .iter()
        .zip(&chain.step_mean)
        .map(|(p, v)| p * v)
        .sum::<f64>();
    Ok(Rate {
        lambda,
        low_precision: false,
    })
}
