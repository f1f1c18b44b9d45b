//! The rotating Kepler problem and its regularization chain.
//!
//! A phase-space point `(q, p)` with negative Kepler energy is sent by the
//! Ligon-Schaaf map to `T*S²`, projected stereographically to `(x, y)`, and
//! pulled back through the Levi-Civita map `(z, w) ↦ (w / z̄, 2z²)`. The
//! composition is two-to-one and lands on the zero set of
//! `F = −1 + 4ba² − 2ca²` (see [`crate::convexity_geom`]).
//!
//! Coordinates of the Levi-Civita chart are always ordered
//! `(z1, z2, w1, w2)`.

mod embedding;
mod hamiltonian;
mod levi_civita;
mod ligon_schaaf;
mod sample;
mod stereo;
mod suite;
mod symplectic;
mod types;

pub use embedding::{
    angular_sign, compose_embedding, momentum_swap, resolve_angular_sign, AngularSign,
};
pub use hamiltonian::{
    effective_potential, effective_potential_radial, hill_bounded_radius, kepler_energy,
    rkp_critical_value, rkp_hamiltonian, rkp_hamiltonian_completed_square, RKP_CRITICAL_VALUE,
};
pub use levi_civita::{lc_inverse, levi_civita, pullback_hamiltonian, surface_invariants, Branch};
pub use ligon_schaaf::{delaunay_hamiltonian, ligon_schaaf, ligon_schaaf_frame, LigonSchaafFrame};
pub use sample::{sample_bounded_energy_surface, sample_negative_energy, P_MINUS_MARGIN};
pub use stereo::{stereo_project, stereo_unproject};
pub use suite::{
    energy_correspondence, ligon_schaaf_defect, symplecticity_defects, EnergyCorrespondence,
    SymplecticDefects,
};
pub use symplectic::{canonical_form, symplecticity_defect, MapId, SymplecticityCheck};
pub use types::{LCState, PlanarState, SphereCotangent, StereoState};
