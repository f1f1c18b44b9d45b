use nalgebra::{Matrix4, Vector2};
use num_complex::Complex64;
use rayon::prelude::*;

use super::model::{first_critical_value, r3bp_hamiltonian, MassRatio, Primary};
use crate::convexity_geom::{conjugated_hessian, TangentialHessian};
use crate::error::{domain, Error, Result};
use crate::kepler_maps::{canonical_form, PlanarState};
use crate::linalg::{fd_gradient, fd_hessian, fd_jacobian};
use crate::sampling::{point_rng, unit_sphere4};

/// Energy surface `H_μ = c` around one primary, in the Levi-Civita chart
/// `Q = primary + 2z²`, `P = w / (4z̄)` (complex notation). The chart is
/// exactly canonical and the regularized function is
/// `K = ‖z‖²(H_μ − c) = ‖w‖²/32 − m/2 − m'‖z‖²/‖Q − e'‖ + Im(w̄ z̄ Q)/4 − c‖z‖²`
/// with `m` the chosen mass and `(e', m')` the other primary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedSurfaceSpec {
    pub mu: MassRatio,
    pub c: f64,
    pub primary: Primary,
}

fn cx(v: Vector2<f64>) -> Complex64 {
    Complex64::new(v.x, v.y)
}

impl RegularizedSurfaceSpec {
    /// Requires `c < c₁(μ)`.
    pub fn new(mu: MassRatio, c: f64, primary: Primary) -> Result<Self> {
        let c1 = first_critical_value(mu)?;
        if !(c < c1) {
            return Err(domain(format!(
                "energy {c} is not below the first critical value {c1}"
            )));
        }
        Ok(RegularizedSurfaceSpec { mu, c, primary })
    }

    /// `(z, w) ↦ (q, p)`.
    pub fn chart(&self, x: &[f64; 4]) -> Result<PlanarState> {
        let z = Complex64::new(x[0], x[1]);
        if z.norm_sqr() == 0.0 {
            return Err(domain("z = 0 is the collision fibre of the chart"));
        }
        let w = Complex64::new(x[2], x[3]);
        let [(e, _), _] = self.primary.select(self.mu);
        let q = cx(e) + 2.0 * z * z;
        let p = w / (4.0 * z.conj());
        Ok(PlanarState::new([q.re, q.im], [p.re, p.im]))
    }

    /// `‖z‖²(H_μ(chart(z, w)) − c)`, undefined on `z = 0`.
    pub fn k_from_chart(&self, x: &[f64; 4]) -> Result<f64> {
        let st = self.chart(x)?;
        Ok((x[0] * x[0] + x[1] * x[1]) * (r3bp_hamiltonian(self.mu, &st)? - self.c))
    }

    /// The regularized function, extended over `z = 0`.
    pub fn k(&self, x: &[f64; 4]) -> Result<f64> {
        let z = Complex64::new(x[0], x[1]);
        let w = Complex64::new(x[2], x[3]);
        if z.norm_sqr() == 0.0 && w.norm_sqr() == 0.0 {
            return Err(domain("the origin of the chart is excluded"));
        }
        let [(e, m), (eo, mo)] = self.primary.select(self.mu);
        let q = cx(e) + 2.0 * z * z;
        let z2 = z.norm_sqr();
        let mut k =
            w.norm_sqr() / 32.0 - m / 2.0 + (w.conj() * z.conj() * q).im / 4.0 - self.c * z2;
        if mo > 0.0 {
            let d = (q - cx(eo)).norm();
            if d == 0.0 {
                return Err(domain("point maps to the other primary"));
            }
            k -= mo * z2 / d;
        }
        Ok(k)
    }

    /// `k` with errors mapped to NaN, for finite differences.
    fn k_or_nan(&self, x: &[f64; 4]) -> f64 {
        self.k(x).unwrap_or(f64::NAN)
    }

    /// `|ω(J eᵢ, J eⱼ) − ω(eᵢ, eⱼ)|` maximized over basis pairs.
    pub fn chart_symplecticity_defect(&self, x: &[f64; 4], h: f64) -> Result<f64> {
        let jac = fd_jacobian(
            |y| {
                self.chart(&[y[0], y[1], y[2], y[3]])
                    .map(|s| s.to_array().to_vec())
            },
            x,
            h,
        )?;
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in i + 1..4 {
                let ci: Vec<f64> = jac.column(i).iter().copied().collect();
                let cj: Vec<f64> = jac.column(j).iter().copied().collect();
                let mut ei = [0.0; 4];
                let mut ej = [0.0; 4];
                ei[i] = 1.0;
                ej[j] = 1.0;
                worst = worst.max((canonical_form(&ci, &cj) - canonical_form(&ei, &ej)).abs());
            }
        }
        Ok(worst)
    }
}

pub const MARCH_STEP: f64 = 0.01;
pub const MARCH_T_MAX: f64 = 16.0;
pub const ROOT_TOL: f64 = 1e-14;
pub const ROOT_RESIDUAL: f64 = 1e-10;

/// First zero of `t ↦ K(tξ)` by marching then bisection.
pub fn ray_root(spec: &RegularizedSurfaceSpec, dir: &[f64; 4]) -> Result<f64> {
    let at = |t: f64| spec.k(&dir.map(|x| x * t));
    let mut lo = MARCH_STEP;
    if at(lo)? >= 0.0 {
        return Err(Error::RootBracket { t_max: lo });
    }
    let mut hi = lo;
    loop {
        hi += MARCH_STEP;
        if hi > MARCH_T_MAX {
            return Err(Error::RootBracket { t_max: MARCH_T_MAX });
        }
        if at(hi)? >= 0.0 {
            break;
        }
        lo = hi;
    }
    while hi - lo > ROOT_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if at(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = if at(lo)?.abs() <= at(hi)?.abs() {
        lo
    } else {
        hi
    };
    if at(t)?.abs() >= ROOT_RESIDUAL {
        return Err(Error::RootBracket { t_max: t });
    }
    Ok(t)
}

/// Points on `K = 0` and the number of rays that missed.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSample {
    pub points: Vec<[f64; 4]>,
    pub skipped: usize,
}

/// Collision points `z = 0`, `w = (±4√m, 0)` where `K(0, w) = 0`.
pub fn collision_points(spec: &RegularizedSurfaceSpec) -> [[f64; 4]; 2] {
    let [(_, m), _] = spec.primary.select(spec.mu);
    let r = 4.0 * m.sqrt();
    [[0.0, 0.0, r, 0.0], [0.0, 0.0, -r, 0.0]]
}

/// `count` seeded rays from the chart origin (which lies inside: `K(0, 0⁺) =
/// −m/2`), followed by the collision points.
pub fn sample_regularized_surface(
    spec: &RegularizedSurfaceSpec,
    count: usize,
    seed: u64,
) -> SurfaceSample {
    let found: Vec<Option<[f64; 4]>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let dir = unit_sphere4(&mut point_rng(seed, i));
            ray_root(spec, &dir).ok().map(|t| dir.map(|x| x * t))
        })
        .collect();
    let skipped = found.iter().filter(|p| p.is_none()).count();
    let mut points: Vec<[f64; 4]> = found.into_iter().flatten().collect();
    points.extend(collision_points(spec));
    SurfaceSample { points, skipped }
}

pub const FD_STEP: f64 = 1e-5;
/// Points with `‖∇K‖` below this are skipped.
pub const MIN_GRADIENT: f64 = 1e-8;
/// Allowed change of the Hessian under `h → h/2`, relative to its largest
/// entry.
pub const HALVING_TOL: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentialDiagnostics {
    pub min_eig: f64,
    /// `det(M/‖∇K‖²)`
    pub det: f64,
    pub eigenvalues: [f64; 3],
    pub grad_norm: f64,
    pub hessian: Matrix4<f64>,
    /// `max |H_h − H_{h/2}| / max |H_h|`
    pub halving_change: f64,
}

impl TangentialDiagnostics {
    pub fn halving_ok(&self) -> bool {
        self.halving_change < HALVING_TOL
    }
}

/// Finite-difference tangential Hessian of an arbitrary defining function,
/// framed by the quaternionic construction applied to its gradient.
pub fn tangential_diagnostics(
    f: impl Fn(&[f64; 4]) -> f64,
    x: &[f64; 4],
) -> Result<TangentialDiagnostics> {
    let grad = fd_gradient(&f, x, FD_STEP);
    let grad_norm = grad.norm();
    if !(grad_norm >= MIN_GRADIENT) {
        return Err(Error::DegenerateFrame { norm: grad_norm });
    }
    let hess = fd_hessian(&f, x, FD_STEP);
    let half = fd_hessian(&f, x, FD_STEP / 2.0);
    let halving_change = (hess - half).abs().max() / hess.abs().max().max(f64::MIN_POSITIVE);
    let TangentialHessian {
        eigenvalues,
        min_eig,
        normalized_det,
        ..
    } = conjugated_hessian(&hess, &[grad[0], grad[1], grad[2], grad[3]])?;
    Ok(TangentialDiagnostics {
        min_eig,
        det: normalized_det,
        eigenvalues: [eigenvalues[0], eigenvalues[1], eigenvalues[2]],
        grad_norm,
        hessian: hess,
        halving_change,
    })
}

/// Diagnostics of `K` at a chart point.
pub fn surface_diagnostics(
    spec: &RegularizedSurfaceSpec,
    x: &[f64; 4],
) -> Result<TangentialDiagnostics> {
    let d = tangential_diagnostics(|y| spec.k_or_nan(y), x)?;
    if !d.min_eig.is_finite() || !d.det.is_finite() {
        return Err(domain("finite-difference stencil left the chart domain"));
    }
    Ok(d)
}

/// Minima over the accepted points of one surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSummary {
    pub samples: usize,
    pub skipped: usize,
    pub min_eig: f64,
    pub min_det: f64,
    pub argmin: [f64; 4],
    pub max_residual: f64,
    pub halving_failures: usize,
}

impl SurfaceSummary {
    pub fn convex(&self) -> bool {
        self.samples > 0 && self.min_eig > 0.0
    }
}

/// Samples the surface and reduces diagnostics in index order; rays that miss
/// and points without a usable frame count as skipped.
pub fn scan_surface(spec: &RegularizedSurfaceSpec, count: usize, seed: u64) -> SurfaceSummary {
    let sample = sample_regularized_surface(spec, count, seed);
    let diags: Vec<Option<(TangentialDiagnostics, f64)>> = sample
        .points
        .par_iter()
        .map(|x| {
            let d = surface_diagnostics(spec, x).ok()?;
            Some((d, spec.k(x).map_or(f64::INFINITY, f64::abs)))
        })
        .collect();
    let mut s = SurfaceSummary {
        samples: 0,
        skipped: sample.skipped,
        min_eig: f64::INFINITY,
        min_det: f64::INFINITY,
        argmin: [f64::NAN; 4],
        max_residual: 0.0,
        halving_failures: 0,
    };
    for (x, d) in sample.points.iter().zip(&diags) {
        let Some((d, res)) = d else {
            s.skipped += 1;
            continue;
        };
        s.samples += 1;
        if d.min_eig < s.min_eig {
            s.min_eig = d.min_eig;
            s.argmin = *x;
        }
        s.min_det = s.min_det.min(d.det);
        s.max_residual = s.max_residual.max(*res);
        if !d.halving_ok() {
            s.halving_failures += 1;
        }
    }
    s
}
