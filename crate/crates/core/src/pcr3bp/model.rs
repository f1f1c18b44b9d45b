use nalgebra::Vector2;

use crate::error::{domain, Error, Result};
use crate::kepler_maps::{PlanarState, RKP_CRITICAL_VALUE};

/// Mass ratio `μ`: primaries at `(−μ, 0)` with mass `1 − μ` and `(1 − μ, 0)`
/// with mass `μ`. `μ = 0` is the rotating Kepler problem.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MassRatio(f64);

impl MassRatio {
    /// Accepts `0 ≤ μ < 1`.
    pub fn new(mu: f64) -> Result<Self> {
        if (0.0..1.0).contains(&mu) {
            Ok(MassRatio(mu))
        } else {
            Err(domain(format!("mass ratio {mu} outside [0, 1)")))
        }
    }

    /// Accepts `0 < μ < 1` only.
    pub fn three_body(mu: f64) -> Result<Self> {
        if mu > 0.0 && mu < 1.0 {
            Ok(MassRatio(mu))
        } else {
            Err(domain(format!("mass ratio {mu} outside (0, 1)")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_kepler(self) -> bool {
        self.0 == 0.0
    }

    /// `(position, mass)` of both primaries, the one at `(−μ, 0)` first.
    pub fn primaries(self) -> [(Vector2<f64>, f64); 2] {
        let mu = self.0;
        [
            (Vector2::new(-mu, 0.0), 1.0 - mu),
            (Vector2::new(1.0 - mu, 0.0), mu),
        ]
    }
}

/// Which primary the regularization is centred on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Primary {
    /// The larger mass (the one at `(−μ, 0)` when `μ ≤ 1/2`).
    #[default]
    Heavy,
    Light,
}

impl Primary {
    /// `((position, mass), (position, mass))` of the chosen and the other
    /// primary.
    pub fn select(self, mu: MassRatio) -> [(Vector2<f64>, f64); 2] {
        let [e, m] = mu.primaries();
        let heavy_first = mu.value() <= 0.5;
        match (self, heavy_first) {
            (Primary::Heavy, true) | (Primary::Light, false) => [e, m],
            _ => [m, e],
        }
    }
}

fn potential_terms(mu: MassRatio, q: &Vector2<f64>) -> Result<f64> {
    let mut u = 0.0;
    for (pos, mass) in mu.primaries() {
        if mass == 0.0 {
            continue;
        }
        let d = (q - pos).norm();
        if d == 0.0 {
            return Err(domain("position at a primary (collision)"));
        }
        u -= mass / d;
    }
    Ok(u)
}

/// `H_μ = ‖p‖²/2 − (1−μ)/‖q−E‖ − μ/‖q−M‖ + (p1 q2 − p2 q1)`.
pub fn r3bp_hamiltonian(mu: MassRatio, st: &PlanarState) -> Result<f64> {
    let (q, p) = (st.q, st.p);
    Ok(p.norm_squared() / 2.0 + potential_terms(mu, &q)? + (p.x * q.y - p.y * q.x))
}

/// `U_μ = −(1−μ)/‖q−E‖ − μ/‖q−M‖ − ‖q‖²/2`.
pub fn r3bp_effective_potential(mu: MassRatio, q: &Vector2<f64>) -> Result<f64> {
    Ok(potential_terms(mu, q)? - q.norm_squared() / 2.0)
}

fn potential_slope_on_axis(mu: f64, x: f64) -> f64 {
    (1.0 - mu) / (x + mu).powi(2) - mu / (x - 1.0 + mu).powi(2) - x
}

pub const L1_TOL: f64 = 1e-12;

/// The collinear critical point between the primaries: `(x, U_μ(x, 0))`.
pub fn lagrange_l1(mu: MassRatio) -> Result<(f64, f64)> {
    let m = mu.value();
    if mu.is_kepler() {
        return Err(domain("L1 needs two primaries (0 < mu < 1)"));
    }
    // slope → +∞ at E and −∞ at M
    let gap = 1e-9 * m.min(1.0 - m);
    let (mut lo, mut hi) = (-m + gap, 1.0 - m - gap);
    let (slo, shi) = (
        potential_slope_on_axis(m, lo),
        potential_slope_on_axis(m, hi),
    );
    if !(slo > 0.0 && shi < 0.0) {
        return Err(Error::Bracket { lo, hi });
    }
    let mut x = 0.5 * (lo + hi);
    while hi - lo > L1_TOL {
        x = 0.5 * (lo + hi);
        let s = potential_slope_on_axis(m, x);
        if s == 0.0 {
            break;
        }
        if s > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        x = 0.5 * (lo + hi);
    }
    let value = r3bp_effective_potential(mu, &Vector2::new(x, 0.0))?;
    Ok((x, value))
}

/// First critical value `c₁(μ)`: the L1 energy, or `−3/2` at `μ = 0`.
pub fn first_critical_value(mu: MassRatio) -> Result<f64> {
    if mu.is_kepler() {
        Ok(RKP_CRITICAL_VALUE)
    } else {
        Ok(lagrange_l1(mu)?.1)
    }
}
