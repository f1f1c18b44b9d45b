use nalgebra::Vector2;

use super::PlanarState;
use crate::error::{domain, Result};

/// The unique critical value of the effective potential.
pub const RKP_CRITICAL_VALUE: f64 = -1.5;

pub fn rkp_critical_value() -> f64 {
    RKP_CRITICAL_VALUE
}

fn radius(q: &Vector2<f64>) -> Result<f64> {
    let r = q.norm();
    if r > 0.0 {
        Ok(r)
    } else {
        Err(domain("position at the origin (collision)"))
    }
}

/// `H(q,p) = ‖p‖²/2 − 1/‖q‖ + (p1 q2 − p2 q1)`.
pub fn rkp_hamiltonian(st: &PlanarState) -> Result<f64> {
    let r = radius(&st.q)?;
    let (q, p) = (st.q, st.p);
    Ok(p.norm_squared() / 2.0 - 1.0 / r + (p.x * q.y - p.y * q.x))
}

/// `H` written as `½((p1+q2)² + (p2−q1)²) + U(q)`.
pub fn rkp_hamiltonian_completed_square(st: &PlanarState) -> Result<f64> {
    let (q, p) = (st.q, st.p);
    let kinetic = 0.5 * ((p.x + q.y).powi(2) + (p.y - q.x).powi(2));
    Ok(kinetic + effective_potential(&q)?)
}

/// `U(q) = −1/‖q‖ − ‖q‖²/2`.
pub fn effective_potential(q: &Vector2<f64>) -> Result<f64> {
    Ok(effective_potential_radial(radius(q)?))
}

pub fn effective_potential_radial(rho: f64) -> f64 {
    -1.0 / rho - rho * rho / 2.0
}

/// `K(q,p) = ‖p‖²/2 − 1/‖q‖`.
pub fn kepler_energy(st: &PlanarState) -> Result<f64> {
    Ok(st.p.norm_squared() / 2.0 - 1.0 / radius(&st.q)?)
}

/// Outer radius of the bounded Hill component: the smallest positive root
/// of `U(ρ) = c`, found by bisection on `(0, 1)` to `1e-12`.
pub fn hill_bounded_radius(c: f64) -> Result<f64> {
    if !(c < RKP_CRITICAL_VALUE) {
        return Err(domain(format!(
            "energy {c} is not below the critical value -3/2"
        )));
    }
    // U is increasing on (0, 1), U(0+) = −∞ and U(1) = −3/2 > c
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid == 0.0 || effective_potential_radial(mid) < c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hamiltonian_values() {
        assert_eq!(
            rkp_hamiltonian(&PlanarState::new([1.0, 0.0], [0.0, 0.0])).unwrap(),
            -1.0
        );
        assert_eq!(
            rkp_hamiltonian(&PlanarState::new([1.0, 0.0], [0.0, 1.0])).unwrap(),
            -1.5
        );
        assert_eq!(
            rkp_hamiltonian(&PlanarState::new([2.0, 0.0], [0.0, 0.0])).unwrap(),
            -0.5
        );
        assert!(rkp_hamiltonian(&PlanarState::new([0.0, 0.0], [1.0, 0.0])).is_err());
    }

    #[test]
    fn completed_square_agrees() {
        for (q, p) in [
            ([0.3, -0.7], [1.1, 0.2]),
            ([-1.5, 0.4], [-0.3, 0.9]),
            ([0.1, 0.1], [2.0, -3.0]),
        ] {
            let st = PlanarState::new(q, p);
            let a = rkp_hamiltonian(&st).unwrap();
            let b = rkp_hamiltonian_completed_square(&st).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn effective_potential_values() {
        assert_eq!(effective_potential(&Vector2::new(1.0, 0.0)).unwrap(), -1.5);
        assert_eq!(effective_potential(&Vector2::new(0.0, 2.0)).unwrap(), -2.5);
        assert_eq!(rkp_critical_value(), -1.5);
        assert!(effective_potential(&Vector2::zeros()).is_err());
        // dU/dρ = 1/ρ² − ρ vanishes only at ρ = 1 on (0, ∞)
        let du = |r: f64| 1.0 / (r * r) - r;
        assert_eq!(du(1.0), 0.0);
        assert!(du(0.9) > 0.0 && du(1.1) < 0.0);
    }

    #[test]
    fn kepler_energy_values() {
        assert_eq!(
            kepler_energy(&PlanarState::new([1.0, 0.0], [0.0, 1.0])).unwrap(),
            -0.5
        );
        let st = PlanarState::new([1.0, 0.0], [0.0, 2f64.sqrt()]);
        assert_abs_diff_eq!(kepler_energy(&st).unwrap(), 0.0, epsilon = 1e-15);
        assert_eq!(
            kepler_energy(&PlanarState::new([0.5, 0.0], [0.0, 0.0])).unwrap(),
            -2.0
        );
    }

    /// Independent bisection on the cubic ρ³ − 4ρ + 2 (the c = −2 case).
    fn cubic_root() -> f64 {
        let f = |r: f64| r * r * r - 4.0 * r + 2.0;
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if f(lo) * f(m) <= 0.0 {
                hi = m;
            } else {
                lo = m;
            }
        }
        lo
    }

    #[test]
    fn hill_radius_at_minus_two() {
        let rho = hill_bounded_radius(-2.0).unwrap();
        assert_abs_diff_eq!(rho, cubic_root(), epsilon = 2e-12);
        assert_abs_diff_eq!(rho, 0.539_188_9, epsilon = 1e-7);
    }

    #[test]
    fn hill_radius_is_monotone_and_below_one() {
        let mut prev = 1.0;
        for c in [-1.5000001, -1.51, -1.6, -2.0, -4.0, -8.0, -100.0, -1e6] {
            let rho = hill_bounded_radius(c).unwrap();
            assert!(rho < prev, "ρ₁({c}) = {rho} not below {prev}");
            assert!(rho < 1.0);
            prev = rho;
        }
        assert!(hill_bounded_radius(-1.5).is_err());
        assert!(hill_bounded_radius(-1.0).is_err());
    }
}
