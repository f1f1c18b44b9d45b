//! Levi-Civita regularized planar circular restricted three-body problem:
//! finite-difference tangential-Hessian scans over mass ratio and energy, and
//! the direct Levi-Civita chart of the rotating Kepler problem (`μ = 0`) as a
//! control.

mod model;
mod regularized;
mod scan;

pub use model::{
    first_critical_value, lagrange_l1, r3bp_effective_potential, r3bp_hamiltonian, MassRatio,
    Primary, L1_TOL,
};
pub use regularized::{
    collision_points, ray_root, sample_regularized_surface, scan_surface, surface_diagnostics,
    tangential_diagnostics, RegularizedSurfaceSpec, SurfaceSample, SurfaceSummary,
    TangentialDiagnostics, FD_STEP, HALVING_TOL, MIN_GRADIENT,
};
pub use scan::{
    control_csv, direct_lc_control, energy_at_fraction, scan_csv, scan_grid, ControlRow, ScanRow,
    CONTROL_HEADER, DEEP_ENERGY_OFFSET, SCAN_HEADER,
};
