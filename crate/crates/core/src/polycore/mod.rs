//! Exact sparse multivariate polynomial arithmetic over ℚ.
//!
//! Polynomials live in a ring fixed by an ordered variable list ([`Vars`]).
//! The default ring is `(z1, z2, w1, w2, c)`, the coordinates of the
//! Levi-Civita chart plus the energy parameter; the `(a, b, c)` ring holds
//! the surface invariants used by the determinant factorization.
//!
//! Terms are kept in a `BTreeMap` under graded lexicographic order, so two
//! polynomials are equal exactly when their term maps are equal and the
//! textual form is reproducible.

mod compiled;
mod matrix;
mod monomial;
mod poly;
mod text;

pub use compiled::F64Poly;
pub use matrix::PolyMatrix3;
pub use monomial::Monomial;
pub use poly::SparsePoly;
pub use text::ParsePolyError;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Ordered variable names of a polynomial ring.
pub type Vars = &'static [&'static str];

/// `(z1, z2, w1, w2, c)`: Levi-Civita chart coordinates and the energy.
pub const LC_VARS: Vars = &["z1", "z2", "w1", "w2", "c"];
/// `(a, b, c)`: `a = |w|²+|z|²`, `b = w1 z2 − z1 w2`, and the energy.
pub const ABC_VARS: Vars = &["a", "b", "c"];

pub const Z1: usize = 0;
pub const Z2: usize = 1;
pub const W1: usize = 2;
pub const W2: usize = 3;
pub const C: usize = 4;

/// Exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from an integer.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
