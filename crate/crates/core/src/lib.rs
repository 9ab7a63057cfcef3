//! Mean cycle time of stochastic 2x2 max-plus linear systems.
//!
//! A max-plus linear system evolves as `z(k) = A(k) ⊗ z(k-1)` where the
//! matrix product is taken in the (max, +) semiring and the entries of the
//! 2x2 matrices `A(k)` are drawn i.i.d. in `k` from per-entry distributions.
//! Under mild conditions the normalized state `‖z(k)‖ / k` converges almost
//! surely to a constant `λ`, the mean cycle time (equivalently the max-plus
//! Lyapunov exponent) of the system.
//!
//! This crate computes `λ` by several independent routes:
//!
//! * [`analytic`] — closed-form formulas for systems with exponential,
//!   constant, Bernoulli, geometric, and mixed entry laws;
//! * [`spectral`] — an exact finite spectral method for matrices with four
//!   independent exponential entries;
//! * [`chain`] — an exact finite Markov chain solver for entries with finite
//!   discrete support;
//! * [`mc`] — a Monte Carlo simulator usable on any entry law.
//!
//! The [`solver`] module classifies a model (up to the symmetries of the
//! problem) and dispatches to the best exact route; the simulator then serves
//! as a cross-check of last resort.

pub mod analytic;
pub mod chain;
pub mod distributions;
pub mod mc;
pub mod model;
pub mod numerics;
pub mod semiring;
pub mod solver;
pub mod spectral;
