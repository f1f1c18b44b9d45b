use nalgebra::{Vector2, Vector3};

/// Point `(q, p)` of the planar phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarState {
    pub q: Vector2<f64>,
    pub p: Vector2<f64>,
}

impl PlanarState {
    pub fn new(q: [f64; 2], p: [f64; 2]) -> Self {
        PlanarState {
            q: Vector2::from(q),
            p: Vector2::from(p),
        }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.q.x, self.q.y, self.p.x, self.p.y]
    }

    pub fn from_slice(v: &[f64]) -> Self {
        PlanarState::new([v[0], v[1]], [v[2], v[3]])
    }

    /// `q1 p2 − q2 p1`.
    pub fn angular_momentum(&self) -> f64 {
        self.q.x * self.p.y - self.q.y * self.p.x
    }
}

/// Point `(r, s)` of `T*S²` embedded in `ℝ³ × ℝ³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereCotangent {
    pub r: Vector3<f64>,
    pub s: Vector3<f64>,
}

impl SphereCotangent {
    pub fn to_array(&self) -> [f64; 6] {
        [self.r.x, self.r.y, self.r.z, self.s.x, self.s.y, self.s.z]
    }

    /// `r1 s2 − r2 s1`.
    pub fn angular_momentum(&self) -> f64 {
        self.r.x * self.s.y - self.r.y * self.s.x
    }

    /// On `T*S²` within `tol`: `‖r‖ = 1` and `r·s = 0`.
    pub fn on_sphere_bundle(&self, tol: f64) -> bool {
        (self.r.norm() - 1.0).abs() <= tol && self.r.dot(&self.s).abs() <= tol
    }

    /// Member of the deleted bundle `T×`: nonzero fiber.
    pub fn in_deleted_bundle(&self) -> bool {
        self.s != Vector3::zeros()
    }

    /// Member of `T₋`: in `T×` and away from the north pole.
    pub fn off_north_pole(&self) -> bool {
        self.in_deleted_bundle() && self.r != Vector3::new(0.0, 0.0, 1.0)
    }
}

/// Stereographic coordinates `(x, y)`; `x` is the sphere chart, `y` the fiber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StereoState {
    pub x: Vector2<f64>,
    pub y: Vector2<f64>,
}

impl StereoState {
    pub fn new(x: [f64; 2], y: [f64; 2]) -> Self {
        StereoState {
            x: Vector2::from(x),
            y: Vector2::from(y),
        }
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.x.x, self.x.y, self.y.x, self.y.y]
    }
}

/// Point `(z, w)` of the Levi-Civita chart, serialized `(z1, z2, w1, w2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LCState {
    pub z: Vector2<f64>,
    pub w: Vector2<f64>,
}

impl LCState {
    pub fn new(z: [f64; 2], w: [f64; 2]) -> Self {
        LCState {
            z: Vector2::from(z),
            w: Vector2::from(w),
        }
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        LCState::new([v[0], v[1]], [v[2], v[3]])
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.z.x, self.z.y, self.w.x, self.w.y]
    }

    pub fn antipode(&self) -> Self {
        LCState {
            z: -self.z,
            w: -self.w,
        }
    }

    pub fn is_origin(&self) -> bool {
        self.z == Vector2::zeros() && self.w == Vector2::zeros()
    }
}
