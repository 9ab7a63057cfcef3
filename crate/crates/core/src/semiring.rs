//! The (max, +) semiring and 2x2 max-plus linear algebra.
//!
//! In the max-plus semiring the "addition" of two elements is their maximum
//! and the "multiplication" is ordinary addition.  The additive identity
//! (semiring zero) is `-∞`, written `⊥`, and the multiplicative identity
//! (semiring one) is `0`.  Matrix-vector and matrix-matrix products follow
//! the usual definitions with (⊕, ⊗) = (max, +):
//!
//! ```text
//! (A ⊗ z)_i = max_j (A_ij + z_j)
//! ```
//!
//! Only the 2x2 / dimension-2 case is needed here, so vectors and matrices
//! are fixed-size value types.

use std::fmt;

/// An element of the max-plus semiring: either `-∞` or a finite real.
///
/// `f64` infinities and NaNs are deliberately kept out of the `Finite`
/// variant by all constructors in this crate; `Bottom` is the only
/// representation of the additive identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MaxPlus {
    /// The semiring zero, `-∞`.
    Bottom,
    /// A finite element.
    Finite(f64),
}

impl MaxPlus {
    /// The additive identity `⊥ = -∞`.
    pub const ZERO: MaxPlus = MaxPlus::Bottom;

    /// The multiplicative identity `e = 0`.
    pub const ONE: MaxPlus = MaxPlus::Finite(0.0);

    /// Semiring addition: `a ⊕ b = max(a, b)`.
    pub fn plus(self, other: MaxPlus) -> MaxPlus {
        match (self, other) {
            (MaxPlus::Bottom, x) | (x, MaxPlus::Bottom) => x,
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => MaxPlus::Finite(a.max(b)),
        }
    }

    /// Semiring multiplication: `a ⊗ b = a + b`, absorbing on `⊥`.
    pub fn times(self, other: MaxPlus) -> MaxPlus {
        match (self, other) {
            (MaxPlus::Bottom, _) | (_, MaxPlus::Bottom) => MaxPlus::Bottom,
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => MaxPlus::Finite(a + b),
        }
    }

    /// Whether this element is the semiring zero `⊥`.
    pub fn is_bottom(self) -> bool {
        matches!(self, MaxPlus::Bottom)
    }

    /// The finite value, or `None` for `⊥`.
    pub fn finite(self) -> Option<f64> {
        match self {
            MaxPlus::Bottom => None,
            MaxPlus::Finite(v) => Some(v),
        }
    }
}

impl From<f64> for MaxPlus {
    fn from(v: f64) -> Self {
        assert!(v.is_finite(), "max-plus finite element must be a finite f64");
        MaxPlus::Finite(v)
    }
}

impl fmt::Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxPlus::Bottom => write!(f, "-inf"),
            MaxPlus::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// A dimension-2 max-plus column vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec2(pub MaxPlus, pub MaxPlus);

impl Vec2 {
    /// The vector `(0, 0)ᵀ`, the usual starting state of an evolution.
    pub const UNIT: Vec2 = Vec2(MaxPlus::ONE, MaxPlus::ONE);

    /// The max-plus norm: the maximum entry.
    ///
    /// Well-defined (finite) whenever at least one entry is finite.
    pub fn norm(self) -> MaxPlus {
        self.0.plus(self.1)
    }

    /// Subtract a scalar from both entries (max-plus scaling by `-s`).
    pub fn shift(self, s: f64) -> Vec2 {
        Vec2(
            self.0.times(MaxPlus::Finite(-s)),
            self.1.times(MaxPlus::Finite(-s)),
        )
    }
}

/// A 2x2 max-plus matrix
/// `[[e11, e12], [e21, e22]]` acting on [`Vec2`] by `(A ⊗ z)_i = max_j (A_ij + z_j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub e11: MaxPlus,
    pub e12: MaxPlus,
    pub e21: MaxPlus,
    pub e22: MaxPlus,
}

impl Mat2 {
    /// Build a matrix from four finite entries.
    pub fn from_finite(e11: f64, e12: f64, e21: f64, e22: f64) -> Mat2 {
        Mat2 {
            e11: e11.into(),
            e12: e12.into(),
            e21: e21.into(),
            e22: e22.into(),
        }
    }

    /// The max-plus identity matrix (`0` on the diagonal, `⊥` off it).
    pub fn identity() -> Mat2 {
        Mat2 {
            e11: MaxPlus::ONE,
            e12: MaxPlus::ZERO,
            e21: MaxPlus::ZERO,
            e22: MaxPlus::ONE,
        }
    }

    /// Matrix-vector product `A ⊗ z`.
    pub fn apply(self, z: Vec2) -> Vec2 {
        Vec2(
            self.e11.times(z.0).plus(self.e12.times(z.1)),
            self.e21.times(z.0).plus(self.e22.times(z.1)),
        )
    }

    /// Matrix-matrix product `A ⊗ B`.
    pub fn compose(self, b: Mat2) -> Mat2 {
        Mat2 {
            e11: self.e11.times(b.e11).plus(self.e12.times(b.e21)),
            e12: self.e11.times(b.e12).plus(self.e12.times(b.e22)),
            e21: self.e21.times(b.e11).plus(self.e22.times(b.e21)),
            e22: self.e21.times(b.e12).plus(self.e22.times(b.e22)),
        }
    }

    /// The transpose `Aᵀ`.
    pub fn transpose(self) -> Mat2 {
        Mat2 {
            e11: self.e11,
            e12: self.e21,
            e21: self.e12,
            e22: self.e22,
        }
    }

    /// Simultaneous row and column swap: conjugation by the permutation
    /// matrix of the transposition (1 2).  Sends `[[a,b],[c,d]]` to
    /// `[[d,c],[b,a]]`.
    pub fn swap(self) -> Mat2 {
        Mat2 {
            e11: self.e22,
            e12: self.e21,
            e21: self.e12,
            e22: self.e11,
        }
    }
}
