//! Sampling the bounded surface and sampled convexity certificates.

use rayon::prelude::*;
use serde::Serialize;

use super::numeric::{f_value, factor_values, lc_ab, tangential_hessian, FactorValues};
use crate::error::{domain, Error, Result};
use crate::kepler_maps::{angular_sign, LCState, RKP_CRITICAL_VALUE};
use crate::report::{ser_f64, ser_f64_slice};
use crate::sampling::{point_rng, unit_sphere4};

/// Rays are searched on `t ∈ (0, 1]`: every surface point has `a = t² < 1`.
pub const RAY_T_MAX: f64 = 1.0;
pub const RAY_TOL: f64 = 1e-12;

/// `(−2c)^{−1/4}`: radius where the surface meets the `b = 0` rays, including
/// the `z1` axis and the collision circle.
pub fn axis_radius(c: f64) -> f64 {
    (-2.0 * c).powf(-0.25)
}

/// First zero of `t ↦ F(tξ)` on `(0, RAY_T_MAX]` by bisection.
pub fn ray_root(dir: &[f64; 4], c: f64) -> Result<f64> {
    let f = |t: f64| f_value(&LCState::from_array(dir.map(|x| x * t)), c);
    let (mut lo, mut hi) = (0.0, RAY_T_MAX);
    if f(hi) <= 0.0 {
        return Err(Error::RootBracket { t_max: RAY_T_MAX });
    }
    while hi - lo > RAY_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Points placed on every surface: `z = (±r, 0), w = 0` and the collision
/// circle points `z = 0, w = (±r, 0)` with `r = (−2c)^{−1/4}`.
pub fn fixed_points(c: f64) -> [LCState; 4] {
    let r = axis_radius(c);
    [
        LCState::new([r, 0.0], [0.0, 0.0]),
        LCState::new([-r, 0.0], [0.0, 0.0]),
        LCState::new([0.0, 0.0], [r, 0.0]),
        LCState::new([0.0, 0.0], [-r, 0.0]),
    ]
}

fn check_energy(c: f64) -> Result<()> {
    if c < RKP_CRITICAL_VALUE {
        Ok(())
    } else {
        Err(domain(format!("energy {c} is not below -3/2")))
    }
}

/// `count` seeded ray points (uniform directions, so not uniform on the
/// surface) followed by the four [`fixed_points`].
pub fn sample_bounded_surface(c: f64, count: usize, seed: u64) -> Result<Vec<LCState>> {
    check_energy(c)?;
    if count == 0 {
        return Err(domain("sample count must be at least 1"));
    }
    let mut pts: Vec<LCState> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let dir = unit_sphere4(&mut point_rng(seed, i));
            ray_root(&dir, c).map(|t| LCState::from_array(dir.map(|x| x * t)))
        })
        .collect::<Result<_>>()?;
    pts.extend(fixed_points(c));
    Ok(pts)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorMinima {
    #[serde(serialize_with = "ser_f64")]
    pub f1: f64,
    #[serde(serialize_with = "ser_f64")]
    pub f2: f64,
    #[serde(serialize_with = "ser_f64")]
    pub f3: f64,
    #[serde(serialize_with = "ser_f64")]
    pub f4: f64,
}

impl FactorMinima {
    fn infinite() -> Self {
        FactorMinima {
            f1: f64::INFINITY,
            f2: f64::INFINITY,
            f3: f64::INFINITY,
            f4: f64::INFINITY,
        }
    }

    fn absorb(&mut self, f: &FactorValues) {
        self.f1 = self.f1.min(f.f1);
        self.f2 = self.f2.min(f.f2);
        self.f3 = self.f3.min(f.f3);
        self.f4 = self.f4.min(f.f4);
    }

    pub fn all_positive(&self) -> bool {
        self.f1 > 0.0 && self.f2 > 0.0 && self.f3 > 0.0 && self.f4 > 0.0
    }
}

/// A sample whose normalized tangential Hessian has a non-positive eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    #[serde(serialize_with = "ser_f64_slice")]
    pub point: [f64; 4],
    #[serde(serialize_with = "ser_f64_slice")]
    pub eigenvalues: [f64; 3],
}

/// Diagnostics at one surface point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointDiagnostics {
    pub point: [f64; 4],
    pub eigenvalues: [f64; 3],
    pub min_eig: f64,
    /// `det(M/‖g‖²)`
    pub det: f64,
    pub factors: FactorValues,
    pub residual: f64,
    pub a: f64,
    pub b: f64,
}

pub fn point_diagnostics(lc: &LCState, c: f64) -> Result<PointDiagnostics> {
    let th = tangential_hessian(lc, c)?;
    let (a, b) = lc_ab(lc);
    Ok(PointDiagnostics {
        point: lc.to_array(),
        eigenvalues: [th.eigenvalues[0], th.eigenvalues[1], th.eigenvalues[2]],
        min_eig: th.min_eig,
        det: th.normalized_det,
        factors: factor_values(a, b, c),
        residual: f_value(lc, c).abs(),
        a,
        b,
    })
}

/// Sampled convexity report for one energy. The serialized fields follow the
/// certificate schema; the remaining ones are for in-process checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityCertificate {
    #[serde(serialize_with = "ser_f64")]
    pub c: f64,
    pub samples: usize,
    pub seed: u64,
    pub sigma: i8,
    /// Smallest `det(M/‖g‖²)`.
    #[serde(serialize_with = "ser_f64")]
    pub min_det: f64,
    #[serde(serialize_with = "ser_f64")]
    pub min_eig: f64,
    #[serde(serialize_with = "ser_f64_slice")]
    pub argmin: [f64; 4],
    pub factor_minima: FactorMinima,
    pub violations: Vec<Violation>,
    pub pass: bool,
    /// Points whose diagnostics failed (degenerate frame).
    #[serde(skip)]
    pub errors: usize,
    #[serde(skip)]
    pub max_residual: f64,
    #[serde(skip)]
    pub max_a: f64,
    /// Largest `2|b| − a`.
    #[serde(skip)]
    pub max_b_excess: f64,
    /// Minimum eigenvalue over the fixed axis and collision points.
    #[serde(skip)]
    pub fixed_min_eig: f64,
}

/// Errors on more than this fraction of the samples abort certification.
pub const MAX_ERROR_FRACTION: f64 = 1e-3;

pub fn certify_points(c: f64, points: &[LCState], seed: u64) -> Result<ConvexityCertificate> {
    check_energy(c)?;
    let diags: Vec<Result<PointDiagnostics>> =
        points.par_iter().map(|p| point_diagnostics(p, c)).collect();
    let errors = diags.iter().filter(|d| d.is_err()).count();
    if errors as f64 > MAX_ERROR_FRACTION * points.len() as f64 {
        let first = diags.into_iter().find_map(|d| d.err()).expect("errors > 0");
        return Err(first);
    }
    let n_fixed = 4.min(points.len());
    let mut cert = ConvexityCertificate {
        c,
        samples: points.len(),
        seed,
        sigma: angular_sign().value(),
        min_det: f64::INFINITY,
        min_eig: f64::INFINITY,
        argmin: [f64::NAN; 4],
        factor_minima: FactorMinima::infinite(),
        violations: Vec::new(),
        pass: false,
        errors,
        max_residual: 0.0,
        max_a: 0.0,
        max_b_excess: f64::NEG_INFINITY,
        fixed_min_eig: f64::INFINITY,
    };
    for (i, d) in diags.iter().enumerate() {
        let Ok(d) = d else { continue };
        if d.min_eig < cert.min_eig {
            cert.min_eig = d.min_eig;
            cert.argmin = d.point;
        }
        cert.min_det = cert.min_det.min(d.det);
        cert.factor_minima.absorb(&d.factors);
        cert.max_residual = cert.max_residual.max(d.residual);
        cert.max_a = cert.max_a.max(d.a);
        cert.max_b_excess = cert.max_b_excess.max(2.0 * d.b.abs() - d.a);
        if i >= points.len() - n_fixed {
            cert.fixed_min_eig = cert.fixed_min_eig.min(d.min_eig);
        }
        if d.min_eig <= 0.0 {
            cert.violations.push(Violation {
                point: d.point,
                eigenvalues: d.eigenvalues,
            });
        }
    }
    cert.pass = cert.min_eig > 0.0 && cert.violations.is_empty();
    Ok(cert)
}

/// Samples `count` ray points plus the fixed points and certifies them.
pub fn certify_convexity(c: f64, count: usize, seed: u64) -> Result<ConvexityCertificate> {
    let pts = sample_bounded_surface(c, count, seed)?;
    certify_points(c, &pts, seed)
}
