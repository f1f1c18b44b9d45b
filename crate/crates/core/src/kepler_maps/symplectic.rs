use super::{
    compose_embedding, levi_civita, ligon_schaaf, stereo_project, Branch, LCState, PlanarState,
    StereoState,
};
use crate::linalg::fd_jacobian;
use crate::Result;

/// Maps whose symplecticity can be checked numerically.
///
/// Each map preserves the canonical forms up to a constant factor `κ`:
/// `Φ*ω_target = κ ω_source`. The Levi-Civita map is only conformally
/// symplectic: with `x = w/z̄`, `y = 2z²` one has
/// `Σ dxᵢ∧dyᵢ = −4 Σ dzᵢ∧dwᵢ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapId {
    Identity,
    /// `(q, p) ↦ (r, s)`
    LigonSchaaf,
    /// `(x, y) ↦ (r, s)`
    Stereographic,
    /// `(z, w) ↦ (x, y)`
    LeviCivita,
    /// `(q, p) ↦ (z, w)` on the `+` branch
    Composed,
}

impl MapId {
    pub fn conformal_factor(self) -> f64 {
        match self {
            MapId::Identity | MapId::LigonSchaaf | MapId::Stereographic => 1.0,
            MapId::LeviCivita => -4.0,
            MapId::Composed => -0.25,
        }
    }

    pub fn apply(self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(match self {
            MapId::Identity => x.to_vec(),
            MapId::LigonSchaaf => ligon_schaaf(&PlanarState::from_slice(x))?
                .to_array()
                .to_vec(),
            MapId::Stereographic => stereo_project(&StereoState::new([x[0], x[1]], [x[2], x[3]]))
                .to_array()
                .to_vec(),
            MapId::LeviCivita => levi_civita(&LCState::new([x[0], x[1]], [x[2], x[3]]))?
                .to_array()
                .to_vec(),
            MapId::Composed => compose_embedding(&PlanarState::from_slice(x), Branch::Plus)?
                .to_array()
                .to_vec(),
        })
    }
}

/// `Σᵢ aᵢ b_{n+i} − a_{n+i} bᵢ` on `ℝ²ⁿ` with coordinates `(x₁…xₙ, y₁…yₙ)`.
pub fn canonical_form(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() / 2;
    (0..n).map(|i| a[i] * b[n + i] - a[n + i] * b[i]).sum()
}

/// Largest mismatch `|ω_target(J eᵢ, J eⱼ) − κ ω_source(eᵢ, eⱼ)|` over
/// coordinate basis pairs, with `J` the central-difference Jacobian at step
/// `h`.
pub fn symplecticity_defect(map: MapId, point: &[f64], h: f64) -> Result<f64> {
    let jac = fd_jacobian(|x| map.apply(x), point, h)?;
    let n = point.len();
    let kappa = map.conformal_factor();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let ci: Vec<f64> = jac.column(i).iter().copied().collect();
            let cj: Vec<f64> = jac.column(j).iter().copied().collect();
            let mut ei = vec![0.0; n];
            let mut ej = vec![0.0; n];
            ei[i] = 1.0;
            ej[j] = 1.0;
            let d = canonical_form(&ci, &cj) - kappa * canonical_form(&ei, &ej);
            worst = worst.max(d.abs());
        }
    }
    Ok(worst)
}

/// Defect at `h` and `h/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticityCheck {
    pub defect: f64,
    pub defect_half_step: f64,
}

impl SymplecticityCheck {
    pub fn run(map: MapId, point: &[f64], h: f64) -> Result<Self> {
        Ok(SymplecticityCheck {
            defect: symplecticity_defect(map, point, h)?,
            defect_half_step: symplecticity_defect(map, point, h / 2.0)?,
        })
    }

    /// Both steps below `tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.defect < tol && self.defect_half_step < tol
    }
}
