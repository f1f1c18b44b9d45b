use nalgebra::Vector2;
use num_complex::Complex64;

use super::{LCState, StereoState};
use crate::error::{domain, Result};

/// Sign choice of the square root in the inverse Levi-Civita map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

fn cx(v: &Vector2<f64>) -> Complex64 {
    Complex64::new(v.x, v.y)
}

fn vec2(c: Complex64) -> Vector2<f64> {
    Vector2::new(c.re, c.im)
}

/// `(z, w) ↦ (x, y) = (w / z̄, 2z²)`.
pub fn levi_civita(lc: &LCState) -> Result<StereoState> {
    let z = cx(&lc.z);
    if z == Complex64::new(0.0, 0.0) {
        return Err(domain("z = 0 has no image in the stereographic chart"));
    }
    Ok(StereoState {
        x: vec2(cx(&lc.w) / z.conj()),
        y: vec2(z * z * 2.0),
    })
}

/// `z = ±√(y/2)` (principal root, sign from `branch`), `w = x·z̄`.
pub fn lc_inverse(st: &StereoState, branch: Branch) -> Result<LCState> {
    let y = cx(&st.y);
    if y == Complex64::new(0.0, 0.0) {
        return Err(domain("y = 0 is the branch point of the Levi-Civita map"));
    }
    let z = (y / 2.0).sqrt() * branch.sign();
    let w = cx(&st.x) * z.conj();
    Ok(LCState {
        z: vec2(z),
        w: vec2(w),
    })
}

/// `(a, b) = (‖w‖² + ‖z‖², w1 z2 − z1 w2)`.
pub fn surface_invariants(lc: &LCState) -> Result<(f64, f64)> {
    if lc.is_origin() {
        return Err(domain("the origin of the Levi-Civita chart is excluded"));
    }
    let a = lc.w.norm_squared() + lc.z.norm_squared();
    let b = lc.w.x * lc.z.y - lc.z.x * lc.w.y;
    Ok((a, b))
}

/// Pull-back of the Ligon-Schaaf regularized Hamiltonian:
/// `−1/(2a²) + 2b`.
pub fn pullback_hamiltonian(lc: &LCState) -> Result<f64> {
    let (a, b) = surface_invariants(lc)?;
    Ok(-1.0 / (2.0 * a * a) + 2.0 * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn forward_example() {
        let st = levi_civita(&LCState::new([1.0, 0.0], [0.0, 0.0])).unwrap();
        assert_eq!(st.x, Vector2::new(0.0, 0.0));
        assert_eq!(st.y, Vector2::new(2.0, 0.0));
        assert!(levi_civita(&LCState::new([0.0, 0.0], [1.0, 0.0])).is_err());
    }

    #[test]
    fn inverse_example() {
        let st = StereoState::new([0.0, 1.0], [-1.0, 0.0]);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = lc_inverse(&st, Branch::Plus).unwrap();
        assert_abs_diff_eq!(p.z, Vector2::new(0.0, h), epsilon = 1e-15);
        assert_abs_diff_eq!(p.w, Vector2::new(h, 0.0), epsilon = 1e-15);
        let m = lc_inverse(&st, Branch::Minus).unwrap();
        assert_abs_diff_eq!(m.z, -p.z, epsilon = 0.0);
        assert_abs_diff_eq!(m.w, -p.w, epsilon = 0.0);
        assert!(lc_inverse(&StereoState::new([1.0, 0.0], [0.0, 0.0]), Branch::Plus).is_err());
    }

    #[test]
    fn pullback_examples() {
        let lc = LCState::new([1.0, 0.0], [0.0, 0.0]);
        assert_eq!(surface_invariants(&lc).unwrap(), (1.0, 0.0));
        assert_eq!(pullback_hamiltonian(&lc).unwrap(), -0.5);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let lc = LCState::new([0.0, h], [h, 0.0]);
        let (a, b) = surface_invariants(&lc).unwrap();
        assert_abs_diff_eq!(a, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(pullback_hamiltonian(&lc).unwrap(), 0.5, epsilon = 1e-15);
        assert!(pullback_hamiltonian(&LCState::new([0.0, 0.0], [0.0, 0.0])).is_err());
    }

    proptest! {
        #[test]
        fn two_to_one_and_round_trip(z1 in -2.0f64..2.0, z2 in -2.0f64..2.0, w1 in -2.0f64..2.0, w2 in -2.0f64..2.0) {
            prop_assume!(z1.hypot(z2) > 1e-3);
            let lc = LCState::new([z1, z2], [w1, w2]);
            let a = levi_civita(&lc).unwrap();
            let b = levi_civita(&lc.antipode()).unwrap();
            prop_assert!((a.x - b.x).norm() < 1e-12 && (a.y - b.y).norm() < 1e-12);
            for branch in [Branch::Plus, Branch::Minus] {
                let back = levi_civita(&lc_inverse(&a, branch).unwrap()).unwrap();
                prop_assert!((back.x - a.x).norm() < 1e-12 * (1.0 + a.x.norm()));
                prop_assert!((back.y - a.y).norm() < 1e-12 * (1.0 + a.y.norm()));
            }
            prop_assert_eq!(pullback_hamiltonian(&lc).unwrap(), pullback_hamiltonian(&lc.antipode()).unwrap());
        }
    }
}
