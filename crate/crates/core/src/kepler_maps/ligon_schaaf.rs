use nalgebra::Vector3;

use super::{kepler_energy, PlanarState, SphereCotangent};
use crate::error::{domain, Result};

/// Intermediate quantities of the Ligon-Schaaf map: the angle `φ` and the
/// orthonormal pair `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LigonSchaafFrame {
    pub phi: f64,
    pub u: Vector3<f64>,
    pub v: Vector3<f64>,
    /// `√(−2K)`
    pub k: f64,
}

pub fn ligon_schaaf_frame(st: &PlanarState) -> Result<LigonSchaafFrame> {
    let energy = kepler_energy(st)?;
    if !(energy < 0.0) {
        return Err(domain(format!("Kepler energy {energy} is not negative")));
    }
    let k = (-2.0 * energy).sqrt();
    let (q, p) = (st.q, st.p);
    let nq = q.norm();
    let qp = q.dot(&p);
    let phi = -k * qp;
    let u = Vector3::new(k * nq * p.x, k * nq * p.y, p.norm_squared() * nq - 1.0);
    let v = Vector3::new(-q.x / nq + qp * p.x, -q.y / nq + qp * p.y, phi);
    Ok(LigonSchaafFrame { phi, u, v, k })
}

/// The Ligon-Schaaf map `P₋ → T₋`.
pub fn ligon_schaaf(st: &PlanarState) -> Result<SphereCotangent> {
    let LigonSchaafFrame { phi, u, v, k } = ligon_schaaf_frame(st)?;
    let (sin, cos) = phi.sin_cos();
    Ok(SphereCotangent {
        r: u * cos + v * sin,
        s: (-u * sin + v * cos) / k,
    })
}

/// `−1 / (2‖s‖²)`.
pub fn delaunay_hamiltonian(rs: &SphereCotangent) -> f64 {
    -1.0 / (2.0 * rs.s.norm_squared())
}
