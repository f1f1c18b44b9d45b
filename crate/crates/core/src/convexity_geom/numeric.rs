//! Floating-point evaluation of `F`, its gradient quadruple, Hessian and the
//! tangential Hessian in the quaternionic frame.

use std::sync::OnceLock;

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use super::symbolic::{defining_polynomial, DH_CONSTANT};
use crate::error::{Error, Result};
use crate::kepler_maps::LCState;
use crate::linalg::{det3, jacobi_eigenvalues};
use crate::polycore::{F64Poly, W1, W2, Z1, Z2};

/// Frames with `‖g‖` at or below this are rejected.
pub const FRAME_TOL: f64 = 1e-10;

fn coords(lc: &LCState) -> [f64; 4] {
    lc.to_array()
}

fn invariants(x: &[f64; 4]) -> (f64, f64) {
    let [z1, z2, w1, w2] = *x;
    (z1 * z1 + z2 * z2 + w1 * w1 + w2 * w2, w1 * z2 - z1 * w2)
}

/// `F = −1 + 4ba² − 2ca²`.
pub fn f_value(lc: &LCState, c: f64) -> f64 {
    let (a, b) = invariants(&coords(lc));
    -1.0 + (4.0 * b - 2.0 * c) * a * a
}

/// `g` with `∇F = a·g`, ordered `(z1, z2, w1, w2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientQuadruple {
    pub g: [f64; 4],
}

impl GradientQuadruple {
    pub fn norm(&self) -> f64 {
        self.g.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn as_vector(&self) -> Vector4<f64> {
        Vector4::from(self.g)
    }
}

/// The cubic quadruple `g` and the gradient `a·g`.
pub fn gradient_g(lc: &LCState, c: f64) -> (GradientQuadruple, [f64; 4]) {
    let x = coords(lc);
    let [z1, z2, w1, w2] = x;
    let (a, _) = invariants(&x);
    let g = [
        -4.0 * w1 * w1 * w2 + 16.0 * z1 * z2 * w1
            - 4.0 * w2.powi(3)
            - 20.0 * z1 * z1 * w2
            - 4.0 * z2 * z2 * w2
            - 8.0 * c * z1,
        4.0 * w1.powi(3) + 4.0 * w1 * w2 * w2 + 4.0 * z1 * z1 * w1 + 20.0 * z2 * z2 * w1
            - 16.0 * z1 * z2 * w2
            - 8.0 * c * z2,
        20.0 * z2 * w1 * w1 - 16.0 * z1 * w1 * w2
            + 4.0 * z2 * w2 * w2
            + 4.0 * z1 * z1 * z2
            + 4.0 * z2.powi(3)
            - 8.0 * c * w1,
        -4.0 * z1 * w1 * w1 + 16.0 * z2 * w1 * w2
            - 20.0 * z1 * w2 * w2
            - 4.0 * z1.powi(3)
            - 4.0 * z1 * z2 * z2
            - 8.0 * c * w2,
    ];
    (GradientQuadruple { g }, g.map(|gi| a * gi))
}

fn hessian_polys() -> &'static [[F64Poly; 4]; 4] {
    static CELL: OnceLock<[[F64Poly; 4]; 4]> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = defining_polynomial();
        let v = [Z1, Z2, W1, W2];
        v.map(|i| v.map(|j| F64Poly::new(&f.diff(i).diff(j))))
    })
}

/// Hessian of `F` in `(z1, z2, w1, w2)`, from the exact second partials.
pub fn hessian_f(lc: &LCState, c: f64) -> Matrix4<f64> {
    let x = coords(lc);
    let pt = [x[0], x[1], x[2], x[3], c];
    let h = hessian_polys();
    Matrix4::from_fn(|i, j| h[i][j].eval(&pt))
}

/// `(g·i, g·j, g·k)`: three vectors orthogonal to `g` and to each other,
/// each of length `‖g‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentFrame {
    pub v: [[f64; 4]; 3],
}

impl TangentFrame {
    /// Columns are the frame vectors.
    pub fn matrix(&self) -> nalgebra::Matrix4x3<f64> {
        nalgebra::Matrix4x3::from_fn(|r, k| self.v[k][r])
    }
}

pub fn quaternion_frame(g: &[f64; 4]) -> TangentFrame {
    let [g1, g2, g3, g4] = *g;
    TangentFrame {
        v: [[-g2, g1, g4, -g3], [-g3, -g4, g1, g2], [-g4, g3, -g2, g1]],
    }
}

/// Frame of a gradient quadruple; fails when `‖g‖ ≤ FRAME_TOL`.
pub fn tangent_frame(g: &GradientQuadruple) -> Result<TangentFrame> {
    let norm = g.norm();
    if norm <= FRAME_TOL {
        return Err(Error::DegenerateFrame { norm });
    }
    Ok(quaternion_frame(&g.g))
}

/// `M = Vᵀ Hess V` and its spectral data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentialHessian {
    pub m: Matrix3<f64>,
    /// `det M`, comparable with the factored determinant.
    pub det: f64,
    /// Eigenvalues of `M/‖g‖²`, ascending.
    pub eigenvalues: Vector3<f64>,
    pub min_eig: f64,
    /// `det(M/‖g‖²)`
    pub normalized_det: f64,
}

/// Conjugates a Hessian by the quaternionic frame of `grad`.
pub fn conjugated_hessian(hess: &Matrix4<f64>, grad: &[f64; 4]) -> Result<TangentialHessian> {
    let norm2: f64 = grad.iter().map(|x| x * x).sum();
    if norm2.sqrt() <= FRAME_TOL {
        return Err(Error::DegenerateFrame { norm: norm2.sqrt() });
    }
    let v = quaternion_frame(grad).matrix();
    let m = v.transpose() * hess * v;
    let m = (m + m.transpose()) * 0.5;
    let normalized = m / norm2;
    let eigenvalues = jacobi_eigenvalues(&normalized);
    Ok(TangentialHessian {
        m,
        det: det3(&m),
        eigenvalues,
        min_eig: eigenvalues[0],
        normalized_det: det3(&normalized),
    })
}

/// Tangential Hessian of `F` in the frame of `g` (not of `a·g`).
pub fn tangential_hessian(lc: &LCState, c: f64) -> Result<TangentialHessian> {
    let (g, _) = gradient_g(lc, c);
    tangent_frame(&g)?;
    conjugated_hessian(&hessian_f(lc, c), &g.g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorValues {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
}

impl FactorValues {
    pub fn as_array(&self) -> [f64; 4] {
        [self.f1, self.f2, self.f3, self.f4]
    }
}

pub fn factor_values(a: f64, b: f64, c: f64) -> FactorValues {
    FactorValues {
        f1: -2.0 * c + a + 4.0 * b,
        f2: -2.0 * c - a + 4.0 * b,
        f3: -4.0 * c.powi(3) + 28.0 * b * c * c - (88.0 * b * b - 7.0 * a * a) * c
            + 96.0 * b.powi(3)
            - 15.0 * a * a * b,
        f4: 4.0 * c * c - 24.0 * b * c + a * a + 32.0 * b * b,
    }
}

/// `2¹⁹ a⁶ f₁ f₂ f₃ f₄²`.
pub fn dh_factored(a: f64, b: f64, c: f64) -> f64 {
    let f = factor_values(a, b, c);
    DH_CONSTANT as f64 * a.powi(6) * f.f1 * f.f2 * f.f3 * f.f4 * f.f4
}

/// `(a, b)` of a chart point, without the origin check.
pub fn lc_ab(lc: &LCState) -> (f64, f64) {
    invariants(&coords(lc))
}
