//! Regularization maps and convexity analysis of the planar rotating Kepler
//! problem.
//!
//! The crate is organised bottom-up:
//!
//! - [`polycore`]: exact sparse multivariate polynomials over big rationals.
//! - [`kepler_maps`]: the rotating Kepler Hamiltonian and the chain
//!   Ligon-Schaaf → stereographic → Levi-Civita that embeds the bounded
//!   energy surfaces into ℝ⁴.
//! - [`convexity_geom`]: the defining polynomial `F` of the embedded surface,
//!   its gradient/Hessian, the quaternionic tangent frame, the exact
//!   factorization of the tangential-Hessian determinant and sampled
//!   convexity certificates.
//! - [`pcr3bp`]: finite-difference convexity scans of the Levi-Civita
//!   regularized restricted three-body problem, plus the direct Levi-Civita
//!   control for the rotating Kepler problem.
//! - [`report`]: JSON/CSV serialization used by the command-line tool.

pub mod convexity_geom;
pub mod error;
pub mod kepler_maps;
pub mod linalg;
pub mod pcr3bp;
pub mod polycore;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
