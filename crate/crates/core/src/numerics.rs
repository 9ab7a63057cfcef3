//! Dense linear solves and adaptive quadrature.
//!
//! Two small, self-contained routines back the exact solvers:
//!
//! * [`solve`] — Gaussian elimination with partial pivoting on a dense
//!   square system, with an explicit singularity check so degenerate
//!   systems fail loudly instead of returning garbage;
//! * [`integrate`] / [`integrate_with_breakpoints`] — adaptive Simpson
//!   quadrature with an absolute error target, used for mean cycle times
//!   that are only available as integrals of distribution functions.

use thiserror::Error;

/// Errors from the numerical routines.
#[derive(Debug, Error, PartialEq)]
pub enum NumericsError {
    /// The linear system is singular to working precision.
    #[error("linear system is singular to working precision (pivot {pivot:.3e} at column {column})")]
    SingularMatrix { column: usize, pivot: f64 },
    /// The integrand returned NaN or ±∞ at a quadrature node.
    #[error("integrand is not finite at t = {at}")]
    NonFinite { at: f64 },
    /// The adaptive subdivision hit its depth limit before reaching the
    /// requested tolerance.
    #[error("quadrature failed to converge on [{a}, {b}] (depth limit {max_depth})")]
    MaxDepth { a: f64, b: f64, max_depth: u32 },
}

/// Relative pivot threshold below which elimination reports singularity.
const SINGULARITY_THRESHOLD: f64 = 1e-13;

/// Solve the dense square system `A x = b` by Gaussian elimination with
/// partial pivoting.
///
/// `a` is row-major with `n * n` entries and is consumed as scratch space,
/// as is `b`.  A pivot smaller than `1e-13` times the largest absolute
/// entry of the original matrix triggers [`NumericsError::SingularMatrix`].
pub fn solve(mut a: Vec<f64>, mut b: Vec<f64>, n: usize) -> Result<Vec<f64>, NumericsError> {
    assert_eq!(a.len(), n * n, "matrix shape mismatch");
    assert_eq!(b.len(), n, "rhs length mismatch");

    let scale = a.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    let threshold = if scale > 0.0 {
        SINGULARITY_THRESHOLD * scale
    } else {
        SINGULARITY_THRESHOLD
    };

    for col in 0..n {
        // Partial pivoting: bring the largest remaining entry of this
        // column to the diagonal.
        let pivot_row = (col..n)
            .max_by(|&i, &j| {
                a[i * n + col]
                    .abs()
                    .partial_cmp(&a[j * n + col].abs())
                    .expect("matrix entries must not be NaN")
            })
            .expect("non-empty pivot range");
        let pivot = a[pivot_row * n + col];
        if pivot.abs() < threshold {
            return Err(NumericsError::SingularMatrix {
                column: col,
                pivot: pivot.abs(),
            });
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        for row in col + 1..n {
            let factor = a[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            a[row * n + col] = 0.0;
            for k in col + 1..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }

    // Back-substitution.
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row * n + k] * x[k];
        }
        x[row] = acc / a[row * n + row];
    }
    Ok(x)
}

/// Default absolute tolerance for [`integrate`].
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Maximum recursion depth of the adaptive subdivision.
const MAX_QUAD_DEPTH: u32 = 60;

/// Adaptive Simpson quadrature of `f` over `[a, b]` with absolute error
/// target `tol`.
///
/// The classic error estimate compares Simpson on the whole interval with
/// the two-panel refinement; an interval is accepted when the two agree to
/// `15 * tol` scaled by its share of the domain.  Non-finite integrand
/// values and failure to converge are reported as errors rather than
/// propagated silently.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64, NumericsError> {
    if a == b {
        return Ok(0.0);
    }
    assert!(a < b, "integration bounds must be ordered");
    assert!(tol > 0.0, "tolerance must be positive");

    let eval = |t: f64| -> Result<f64, NumericsError> {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericsError::NonFinite { at: t })
        }
    };

    let m = 0.5 * (a + b);
    let fa = eval(a)?;
    let fm = eval(m)?;
    let fb = eval(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&eval, a, b, fa, fm, fb, whole, tol, 0)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<E: Fn(f64) -> Result<f64, NumericsError>>(
    eval: &E,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, NumericsError> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = eval(lm)?;
    let frm = eval(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        // Richardson extrapolation of the two estimates.
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_QUAD_DEPTH {
        return Err(NumericsError::MaxDepth {
            a,
            b,
            max_depth: MAX_QUAD_DEPTH,
        });
    }
    let half_tol = 0.5 * tol;
    let l = simpson_step(eval, a, m, fa, flm, fm, left, half_tol, depth + 1)?;
    let r = simpson_step(eval, m, b, fm, frm, fb, right, half_tol, depth + 1)?;
    Ok(l + r)
}

/// Integrate `f` over `[a, b]`, splitting the domain at the given interior
/// breakpoints first.
///
/// Adaptive Simpson converges slowly across kinks and jump points; when the
/// locations of possible non-smooth points are known (atoms of a
/// distribution, ends of its support) it is far more robust to integrate
/// each smooth piece separately.  Breakpoints outside `(a, b)` are ignored,
/// duplicates are merged.
///
/// Each piece is treated as left-open: the integrand is sampled starting a
/// relative `1e-13` inside the piece, so a jump exactly at a cut (or at
/// `a`) does not poison the subdivision.  Distribution functions in this
/// crate are left-continuous, which makes every piece's right endpoint
/// agree with its interior; this nudge handles the left endpoints, at an
/// error well below any tolerance the crate uses.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<f64, NumericsError> {
    if a == b {
        return Ok(0.0);
    }
    assert!(a < b, "integration bounds must be ordered");
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|t| *t > a && *t < b)
        .collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("breakpoints must not be NaN"));
    cuts.dedup();
    cuts.push(b);

    let mut total = 0.0;
    let mut lo = a;
    let per_piece_tol = tol / cuts.len() as f64;
    for &cut in &cuts {
        let lo_open = lo + 1e-13 * (cut - lo);
        total += integrate(f, lo_open, cut, per_piece_tol)?;
        lo = cut;
    }
    Ok(total)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn solve_recovers_known_solution(
            seedx in proptest::collection::vec(-10.0_f64..10.0, 3),
            diag in proptest::collection::vec(5.0_f64..20.0, 3),
            off in proptest::collection::vec(-1.0_f64..1.0, 9),
        ) {
            // Build a diagonally dominant (hence well-conditioned) matrix,
            // multiply a known x, and check the solver recovers it.
            let n = 3;
            let mut a = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    a[i * n + j] = if i == j { diag[i] } else { off[i * n + j] };
                }
            }
            let mut b = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    b[i] += a[i * n + j] * seedx[j];
                }
            }
            let x = solve(a, b, n).unwrap();
            for j in 0..n {
                prop_assert!((x[j] - seedx[j]).abs() < 1e-9);
            }
        }

        #[test]
        fn quadrature_matches_closed_form_for_quartics(
            c0 in -3.0_f64..3.0,
            c1 in -3.0_f64..3.0,
            c2 in -3.0_f64..3.0,
            c4 in -3.0_f64..3.0,
            b in 0.5_f64..4.0,
        ) {
            let f = |t: f64| c0 + c1 * t + c2 * t * t + c4 * t.powi(4);
            let want = c0 * b + c1 * b * b / 2.0 + c2 * b.powi(3) / 3.0 + c4 * b.powi(5) / 5.0;
            let got = integrate(&f, 0.0, b, 1e-11).unwrap();
            prop_assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
        }
    }
}
