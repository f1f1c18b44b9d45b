//! The embedded energy surface `Γ_c = {F = 0}` in the Levi-Civita chart,
//! `F = −1 + 4ba² − 2ca²` with `a = ‖w‖² + ‖z‖²`, `b = w1 z2 − z1 w2`.
//!
//! [`symbolic`] holds the exact objects (gradient, Hessian, frame, the
//! tangential-Hessian determinant and its factorization), the other
//! submodules their floating-point counterparts and sampled certification.

pub mod certify;
pub mod f3;
pub mod numeric;
pub mod symbolic;

pub use certify::{
    certify_convexity, certify_points, point_diagnostics, sample_bounded_surface,
    ConvexityCertificate, FactorMinima, PointDiagnostics, Violation,
};
pub use f3::{f3_analysis, F3Case, F3CaseCheck, F3Trace};
pub use numeric::{
    conjugated_hessian, dh_factored, f_value, factor_values, gradient_g, hessian_f, lc_ab,
    tangent_frame, tangential_hessian, FactorValues, GradientQuadruple, TangentFrame,
    TangentialHessian,
};
pub use symbolic::{
    artifacts, axis_value_at_case_boundary, axis_value_at_case_boundary_f64, build_symbolic,
    compare_with_dh, defining_polynomial, factor_identities, factor_polys, factored_dh_abc,
    gradient_display_g3_misprint, gradient_display_polys, gradient_identity_residuals,
    lc_invariants, onshell_numerator_poly, vanishes_on_grid, verify_factorization,
    FactorizationOutcome, IdentityCheck, SymbolicArtifacts, DH_CONSTANT,
};
