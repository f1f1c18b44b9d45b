use nalgebra::{Vector2, Vector3};

use super::{SphereCotangent, StereoState};
use crate::error::{Error, Result};

/// Cotangent lift of the inverse stereographic projection from the north
/// pole: `(x, y) ↦ (r, s)`.
///
/// `r3 = (‖x‖² − 1)/(‖x‖² + 1)` is the unique completion making `‖r‖ = 1`.
pub fn stereo_project(st: &StereoState) -> SphereCotangent {
    let (x, y) = (st.x, st.y);
    let n = x.norm_squared();
    let re = x.dot(&y);
    let s12 = y * ((n + 1.0) / 2.0) - x * re;
    let r12 = x * (2.0 / (n + 1.0));
    SphereCotangent {
        r: Vector3::new(r12.x, r12.y, (n - 1.0) / (n + 1.0)),
        s: Vector3::new(s12.x, s12.y, re),
    }
}

/// Inverse of [`stereo_project`]; the north pole (`r3 = 1`) is a collision.
pub fn stereo_unproject(rs: &SphereCotangent) -> Result<StereoState> {
    let d = 1.0 - rs.r.z;
    if d <= f64::EPSILON {
        return Err(Error::Collision);
    }
    let x = Vector2::new(rs.r.x, rs.r.y) / d;
    let y = (Vector2::new(rs.s.x, rs.s.y) + x * rs.s.z) * d;
    Ok(StereoState { x, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn hand_evaluated_point() {
        let rs = stereo_project(&StereoState::new([0.0, 1.0], [-1.0, 0.0]));
        assert_abs_diff_eq!(rs.r, Vector3::new(0.0, 1.0, 0.0), epsilon = 1e-15);
        assert_abs_diff_eq!(rs.s, Vector3::new(-1.0, 0.0, 0.0), epsilon = 1e-15);
        let back = stereo_unproject(&rs).unwrap();
        assert_abs_diff_eq!(back.x, Vector2::new(0.0, 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(back.y, Vector2::new(-1.0, 0.0), epsilon = 1e-15);
    }

    #[test]
    fn north_pole_is_a_collision() {
        let rs = SphereCotangent {
            r: Vector3::new(0.0, 0.0, 1.0),
            s: Vector3::new(1.0, 0.0, 0.0),
        };
        assert_eq!(stereo_unproject(&rs), Err(Error::Collision));
    }

    proptest! {
        #[test]
        fn projection_properties(x1 in -3.0f64..3.0, x2 in -3.0f64..3.0, y1 in -3.0f64..3.0, y2 in -3.0f64..3.0) {
            let st = StereoState::new([x1, x2], [y1, y2]);
            let rs = stereo_project(&st);
            prop_assert!(rs.on_sphere_bundle(1e-12));
            let n = st.x.norm_squared();
            prop_assert!((rs.s.norm() - (n + 1.0) / 2.0 * st.y.norm()).abs() < 1e-12);
            prop_assert!((rs.angular_momentum() - (x1 * y2 - x2 * y1)).abs() < 1e-12);
            let back = stereo_unproject(&rs).unwrap();
            prop_assert!((back.x - st.x).norm() < 1e-12);
            prop_assert!((back.y - st.y).norm() < 1e-12);
        }
    }
}
