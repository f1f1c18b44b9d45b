use std::sync::OnceLock;

use super::{
    delaunay_hamiltonian, lc_inverse, ligon_schaaf, rkp_hamiltonian, stereo_unproject, Branch,
    LCState, PlanarState,
};

/// Sign `σ` in `H = −1/(2‖s‖²) + σ (r1 s2 − r2 s1)` for the Ligon-Schaaf
/// image of the rotating Kepler Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularSign {
    Plus,
    Minus,
}

impl AngularSign {
    pub fn value(self) -> i8 {
        match self {
            AngularSign::Plus => 1,
            AngularSign::Minus => -1,
        }
    }
}

/// Determines `σ` on the sample `q = (1,0)`, `p = (0,1)` where every
/// quantity is exact: `H = −3/2`, `−1/(2‖s‖²) = −1/2` and
/// `r1 s2 − r2 s1 = 1`.
pub fn resolve_angular_sign() -> AngularSign {
    let st = PlanarState::new([1.0, 0.0], [0.0, 1.0]);
    let rs = ligon_schaaf(&st).expect("sample has negative Kepler energy");
    let h = rkp_hamiltonian(&st).expect("sample is not a collision");
    let rest = h - delaunay_hamiltonian(&rs);
    let l = rs.angular_momentum();
    if (rest - l).abs() <= (rest + l).abs() {
        AngularSign::Plus
    } else {
        AngularSign::Minus
    }
}

/// The resolved `σ`, computed once per process.
pub fn angular_sign() -> AngularSign {
    static SIGN: OnceLock<AngularSign> = OnceLock::new();
    *SIGN.get_or_init(resolve_angular_sign)
}

/// `R: (z1, z2, w1, w2) ↦ (z2, z1, w2, w1)`. It preserves `Σ dzᵢ∧dwᵢ` and
/// `a`, and negates `b`.
pub fn momentum_swap(lc: &LCState) -> LCState {
    LCState::new([lc.z.y, lc.z.x], [lc.w.y, lc.w.x])
}

/// Ligon-Schaaf, then stereographic coordinates, then the inverse
/// Levi-Civita map on the chosen branch; followed by `R` when `σ = −1`, so
/// that the image satisfies `−1/(2a²) + 2b = H(q, p)`.
pub fn compose_embedding(st: &PlanarState, branch: Branch) -> crate::Result<LCState> {
    let rs = ligon_schaaf(st)?;
    let xy = stereo_unproject(&rs)?;
    let lc = lc_inverse(&xy, branch)?;
    Ok(match angular_sign() {
        AngularSign::Plus => lc,
        AngularSign::Minus => momentum_swap(&lc),
    })
}

#[cfg(test)]
mod tests {
    use super::super::pullback_hamiltonian;
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector2;

    #[test]
    fn sign_is_minus() {
        assert_eq!(resolve_angular_sign(), AngularSign::Minus);
        assert_eq!(angular_sign().value(), -1);
    }

    #[test]
    fn chain_example_before_correction() {
        let st = PlanarState::new([1.0, 0.0], [0.0, 1.0]);
        let xy = stereo_unproject(&ligon_schaaf(&st).unwrap()).unwrap();
        let lc = lc_inverse(&xy, Branch::Plus).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(lc.z, Vector2::new(0.0, h), epsilon = 1e-15);
        assert_abs_diff_eq!(lc.w, Vector2::new(h, 0.0), epsilon = 1e-15);
        // uncorrected, the pulled-back value has the wrong angular sign
        assert_abs_diff_eq!(pullback_hamiltonian(&lc).unwrap(), 0.5, epsilon = 1e-15);
        let fixed = compose_embedding(&st, Branch::Plus).unwrap();
        assert_abs_diff_eq!(pullback_hamiltonian(&fixed).unwrap(), -1.5, epsilon = 1e-15);
    }

    #[test]
    fn energy_correspondence_at_minus_two() {
        // q on the x-axis inside the bounded Hill region with zero rotating-frame velocity
        let rho = super::super::hill_bounded_radius(-2.0).unwrap();
        let st = PlanarState::new([rho, 0.0], [0.0, rho]);
        assert_abs_diff_eq!(rkp_hamiltonian(&st).unwrap(), -2.0, epsilon = 1e-11);
        for branch in [Branch::Plus, Branch::Minus] {
            let lc = compose_embedding(&st, branch).unwrap();
            assert_abs_diff_eq!(pullback_hamiltonian(&lc).unwrap(), -2.0, epsilon = 1e-9);
        }
        let p = compose_embedding(&st, Branch::Plus).unwrap();
        let m = compose_embedding(&st, Branch::Minus).unwrap();
        assert_abs_diff_eq!(p.z, -m.z, epsilon = 1e-12);
        assert_abs_diff_eq!(p.w, -m.w, epsilon = 1e-12);
    }
}
