use rand::Rng;

use super::{effective_potential_radial, hill_bounded_radius, kepler_energy, PlanarState};
use crate::sampling::{uniform_annulus, uniform_disc};

/// Samples of `P₋` are kept at Kepler energy `K ≤ −P_MINUS_MARGIN`, away
/// from parabolic motion where `1/√(−2K)` blows up.
pub const P_MINUS_MARGIN: f64 = 0.05;

/// `q` uniform in the annulus `0.3 ≤ ‖q‖ ≤ 2`, `p` uniform in the disc of
/// radius 2, rejected until `K ≤ −P_MINUS_MARGIN`.
pub fn sample_negative_energy(rng: &mut impl Rng) -> PlanarState {
    loop {
        let st = PlanarState::new(uniform_annulus(rng, 0.3, 2.0), uniform_disc(rng, 2.0));
        if kepler_energy(&st).is_ok_and(|k| k <= -P_MINUS_MARGIN) {
            return st;
        }
    }
}

/// A point of `Σ_c^b`: `q` uniform in the bounded Hill disc (kept at
/// `‖q‖ ≥ 0.01·ρ₁`), then `p` with `(p1 + q2, p2 − q1)` of length
/// `√(2(c − U(q)))` in a uniform direction.
pub fn sample_bounded_energy_surface(c: f64, rng: &mut impl Rng) -> crate::Result<PlanarState> {
    let rho1 = hill_bounded_radius(c)?;
    let q = uniform_annulus(rng, 0.01 * rho1, rho1);
    let rho = q[0].hypot(q[1]);
    let speed = (2.0 * (c - effective_potential_radial(rho)))
        .max(0.0)
        .sqrt();
    let th = rng.gen::<f64>() * std::f64::consts::TAU;
    let p = [speed * th.cos() - q[1], speed * th.sin() + q[0]];
    Ok(PlanarState::new(q, p))
}
