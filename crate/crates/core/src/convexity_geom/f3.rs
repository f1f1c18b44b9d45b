//! Pointwise trace of the positivity argument for `f₃` on the surface.
//!
//! On `F = 0` one has `b = 1/(4a²) + c/2` and `4a⁶ f₃ = N(a, c)`, a parabola
//! in `c` with axis `c* = −(7 − a⁶)/(12a²)`. For `a² ≥ 7/18` the axis lies
//! right of `−3/2`, so `N(a, c) ≥ N(a, −3/2) = 3(a² − 1)³(a² − 2)`; otherwise
//! `N(a, c) ≥ N(a, c*) = (−a¹² − 166a⁶ + 23)/12`.

use crate::error::{domain, Result};
use crate::kepler_maps::RKP_CRITICAL_VALUE;

/// `a²` at which the two cases meet.
pub const CASE_BOUNDARY_A2: f64 = 7.0 / 18.0;
/// Cells with `|a² − 7/18|` below this are run under both cases.
pub const CASE_BOUNDARY_TOL: f64 = 1e-12;
/// Slack of the comparison `N ≥ bound`.
pub const BOUND_TOL: f64 = 1e-9;

/// `N(a, c) = 12c²a⁴ − 2ca⁸ − 15a⁶ + 14ca² + 6`.
pub fn onshell_numerator(a: f64, c: f64) -> f64 {
    let a2 = a * a;
    let a4 = a2 * a2;
    12.0 * c * c * a4 - 2.0 * c * a4 * a4 - 15.0 * a4 * a2 + 14.0 * c * a2 + 6.0
}

/// `f₃` on the surface, `N / (4a⁶)`.
pub fn f3_onshell(a: f64, c: f64) -> f64 {
    onshell_numerator(a, c) / (4.0 * a.powi(6))
}

/// `3(a² − 1)³(a² − 2)`, the value of `N` at `c = −3/2`.
pub fn critical_energy_value(a: f64) -> f64 {
    let a2 = a * a;
    3.0 * (a2 - 1.0).powi(3) * (a2 - 2.0)
}

/// `c* = −(7 − a⁶)/(12a²)`.
pub fn parabola_axis(a: f64) -> f64 {
    -(7.0 - a.powi(6)) / (12.0 * a * a)
}

/// `(−a¹² − 166a⁶ + 23)/12`, the value of `N` at the axis.
pub fn axis_value(a: f64) -> f64 {
    let a6 = a.powi(6);
    (-a6 * a6 - 166.0 * a6 + 23.0) / 12.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum F3Case {
    /// `a² ≥ 7/18`: bound by the value at `c = −3/2`.
    CriticalEnergy,
    /// `a² < 7/18`: bound by the minimum at the axis.
    Axis,
}

impl F3Case {
    pub fn label(self) -> &'static str {
        match self {
            F3Case::CriticalEnergy => "a2>=7/18",
            F3Case::Axis => "a2<7/18",
        }
    }
}

/// One case applied to one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F3CaseCheck {
    pub case: F3Case,
    /// Lower bound on `N` claimed by the case.
    pub bound: f64,
    /// For [`F3Case::CriticalEnergy`]: the axis lies right of `−3/2`.
    /// Always true for [`F3Case::Axis`].
    pub premise: bool,
    pub bound_positive: bool,
    pub respects_bound: bool,
}

impl F3CaseCheck {
    pub fn holds(&self) -> bool {
        self.premise && self.bound_positive && self.respects_bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct F3Trace {
    pub a: f64,
    pub c: f64,
    pub numerator: f64,
    pub f3: f64,
    pub axis: f64,
    /// One entry, or two on the case boundary.
    pub checks: Vec<F3CaseCheck>,
    pub pass: bool,
}

fn run_case(case: F3Case, a: f64, n: f64) -> F3CaseCheck {
    let (bound, premise) = match case {
        F3Case::CriticalEnergy => (
            critical_energy_value(a),
            parabola_axis(a) > RKP_CRITICAL_VALUE,
        ),
        F3Case::Axis => (axis_value(a), true),
    };
    F3CaseCheck {
        case,
        bound,
        premise,
        bound_positive: bound > 0.0,
        respects_bound: n >= bound - BOUND_TOL * bound.abs().max(1.0),
    }
}

/// Runs the case analysis at `(a, c)` with `0 < a < 1`, `c < −3/2`.
pub fn f3_analysis(a: f64, c: f64) -> Result<F3Trace> {
    if !(a > 0.0 && a < 1.0) {
        return Err(domain(format!("f3 analysis needs 0 < a < 1, got {a}")));
    }
    if !(c < RKP_CRITICAL_VALUE) {
        return Err(domain(format!("f3 analysis needs c < -3/2, got {c}")));
    }
    let a2 = a * a;
    let numerator = onshell_numerator(a, c);
    let f3 = numerator / (4.0 * a.powi(6));
    let cases: &[F3Case] = if (a2 - CASE_BOUNDARY_A2).abs() <= CASE_BOUNDARY_TOL {
        &[F3Case::CriticalEnergy, F3Case::Axis]
    } else if a2 > CASE_BOUNDARY_A2 {
        &[F3Case::CriticalEnergy]
    } else {
        &[F3Case::Axis]
    };
    let checks: Vec<F3CaseCheck> = cases.iter().map(|&k| run_case(k, a, numerator)).collect();
    let pass = f3 > 0.0 && checks.iter().all(F3CaseCheck::holds);
    Ok(F3Trace {
        a,
        c,
        numerator,
        f3,
        axis: parabola_axis(a),
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity_geom::numeric::factor_values;
    use approx::assert_relative_eq;

    #[test]
    fn hill_boundary_degeneracy() {
        assert_eq!(onshell_numerator(1.0, -1.5), 0.0);
        assert_eq!(critical_energy_value(1.0), 0.0);
    }

    #[test]
    fn half_a_squared_at_critical_energy() {
        let a = 0.5f64.sqrt();
        assert_relative_eq!(onshell_numerator(a, -1.5), 0.5625, epsilon = 1e-14);
        assert_relative_eq!(f3_onshell(a, -1.5), 1.125, epsilon = 1e-13);
        assert_relative_eq!(critical_energy_value(a), 0.5625, epsilon = 1e-14);
        let t = f3_analysis(a, -1.5 - 1e-9).unwrap();
        assert!(t.pass);
        assert_relative_eq!(t.f3, 1.125, epsilon = 1e-7);
        assert_eq!(t.checks.len(), 1);
        assert_eq!(t.checks[0].case, F3Case::CriticalEnergy);
    }

    #[test]
    fn boundary_cell_runs_both_cases() {
        let a = CASE_BOUNDARY_A2.sqrt();
        for c in [-1.6, -3.0, -10.0] {
            let t = f3_analysis(a, c).unwrap();
            assert_eq!(t.checks.len(), 2);
            assert!(t.pass, "{t:?}");
        }
        assert!((axis_value(a) - 1.1028).abs() < 5e-4);
    }

    #[test]
    fn onshell_numerator_matches_factor() {
        for (a, c) in [(0.3, -2.0), (0.8, -1.7), (0.55, -9.0)] {
            let b = 1.0 / (4.0 * a * a) + c / 2.0;
            let f3 = factor_values(a, b, c).f3;
            assert_relative_eq!(f3_onshell(a, c), f3, max_relative = 1e-10);
        }
    }

    #[test]
    fn domain_gate() {
        assert!(f3_analysis(1.0, -2.0).is_err());
        assert!(f3_analysis(0.0, -2.0).is_err());
        assert!(f3_analysis(0.5, -1.5).is_err());
    }

    #[test]
    fn default_grid_passes() {
        for i in 0..100 {
            let a = 0.01 + 0.98 * f64::from(i) / 99.0;
            for j in 0..100 {
                let c = -10.0 + (10.0 - 1.500000001) * f64::from(j) / 99.0;
                assert!(f3_analysis(a, c).unwrap().pass, "a={a} c={c}");
            }
        }
    }
}
