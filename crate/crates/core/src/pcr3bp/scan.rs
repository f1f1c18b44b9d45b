use rayon::prelude::*;

use super::model::{first_critical_value, MassRatio, Primary};
use super::regularized::{scan_surface, RegularizedSurfaceSpec};
use crate::convexity_geom::certify_convexity;
use crate::error::{domain, Result};
use crate::kepler_maps::RKP_CRITICAL_VALUE;
use crate::report::{fmt17, to_csv};

/// Depth of the reference energy below `c₁(μ)`: fraction 0 is `c₁ − 3`.
pub const DEEP_ENERGY_OFFSET: f64 = 3.0;

/// `c = c_ref + fraction·(c₁ − c_ref)` with `c_ref = c₁ − 3`.
pub fn energy_at_fraction(c1: f64, fraction: f64) -> f64 {
    let c_ref = c1 - DEEP_ENERGY_OFFSET;
    c_ref + fraction * (c1 - c_ref)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub mu: f64,
    pub c_crit: f64,
    pub energy: f64,
    pub fraction: f64,
    pub samples: usize,
    pub skipped: usize,
    pub min_eig: f64,
    pub min_det: f64,
    pub pass: bool,
    pub max_residual: f64,
    pub halving_failures: usize,
    /// Set when the row could not be computed.
    pub error: Option<String>,
}

pub const SCAN_HEADER: [&str; 9] = [
    "mu", "c_crit", "energy", "fraction", "samples", "skipped", "min_eig", "min_det", "pass",
];

impl ScanRow {
    pub fn csv_fields(&self) -> Vec<String> {
        vec![
            fmt17(self.mu),
            fmt17(self.c_crit),
            fmt17(self.energy),
            fmt17(self.fraction),
            self.samples.to_string(),
            self.skipped.to_string(),
            fmt17(self.min_eig),
            fmt17(self.min_det),
            self.pass.to_string(),
        ]
    }
}

fn scan_row(mu: f64, fraction: f64, count: usize, seed: u64, primary: Primary) -> ScanRow {
    let mut row = ScanRow {
        mu,
        c_crit: f64::NAN,
        energy: f64::NAN,
        fraction,
        samples: 0,
        skipped: 0,
        min_eig: f64::NAN,
        min_det: f64::NAN,
        pass: false,
        max_residual: f64::NAN,
        halving_failures: 0,
        error: None,
    };
    let spec = (|| {
        if !(fraction > 0.0 && fraction < 1.0) {
            return Err(domain(format!("fraction {fraction} outside (0, 1)")));
        }
        let m = MassRatio::three_body(mu)?;
        let c1 = first_critical_value(m)?;
        row.c_crit = c1;
        row.energy = energy_at_fraction(c1, fraction);
        RegularizedSurfaceSpec::new(m, row.energy, primary)
    })();
    match spec {
        Ok(spec) => {
            let s = scan_surface(&spec, count, seed);
            row.samples = s.samples;
            row.skipped = s.skipped;
            row.min_eig = s.min_eig;
            row.min_det = s.min_det;
            row.max_residual = s.max_residual;
            row.halving_failures = s.halving_failures;
            row.pass = s.convex();
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// One row per `(μ, fraction)`, `μ` outermost; errors stay in their row.
pub fn scan_grid(
    mus: &[f64],
    fractions: &[f64],
    count: usize,
    seed: u64,
    primary: Primary,
) -> Vec<ScanRow> {
    let cells: Vec<(f64, f64)> = mus
        .iter()
        .flat_map(|&m| fractions.iter().map(move |&f| (m, f)))
        .collect();
    cells
        .par_iter()
        .map(|&(m, f)| scan_row(m, f, count, seed, primary))
        .collect()
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(ScanRow::csv_fields).collect();
    to_csv(&SCAN_HEADER, &body).expect("in-memory csv")
}

/// The `μ = 0` surface in the plain Levi-Civita chart next to the
/// Ligon-Schaaf-composed surface at the same energy.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlRow {
    pub c: f64,
    pub samples: usize,
    pub skipped: usize,
    pub min_eig: f64,
    pub min_det: f64,
    pub argmin: [f64; 4],
    pub direct_convex: bool,
    pub composed_min_eig: f64,
    pub composed_pass: bool,
}

pub const CONTROL_HEADER: [&str; 8] = [
    "energy",
    "samples",
    "skipped",
    "min_eig",
    "min_det",
    "direct_convex",
    "composed_min_eig",
    "composed_pass",
];

impl ControlRow {
    pub fn csv_fields(&self) -> Vec<String> {
        vec![
            fmt17(self.c),
            self.samples.to_string(),
            self.skipped.to_string(),
            fmt17(self.min_eig),
            fmt17(self.min_det),
            self.direct_convex.to_string(),
            fmt17(self.composed_min_eig),
            self.composed_pass.to_string(),
        ]
    }
}

pub fn direct_lc_control(energies: &[f64], count: usize, seed: u64) -> Result<Vec<ControlRow>> {
    if let Some(&c) = energies.iter().find(|&&c| !(c < RKP_CRITICAL_VALUE)) {
        return Err(domain(format!("energy {c} is not below -3/2")));
    }
    let kepler = MassRatio::new(0.0)?;
    energies
        .par_iter()
        .map(|&c| {
            let spec = RegularizedSurfaceSpec::new(kepler, c, Primary::Heavy)?;
            let s = scan_surface(&spec, count, seed);
            let cert = certify_convexity(c, count, seed)?;
            Ok(ControlRow {
                c,
                samples: s.samples,
                skipped: s.skipped,
                min_eig: s.min_eig,
                min_det: s.min_det,
                argmin: s.argmin,
                direct_convex: s.convex(),
                composed_min_eig: cert.min_eig,
                composed_pass: cert.pass,
            })
        })
        .collect()
}

pub fn control_csv(rows: &[ControlRow]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(ControlRow::csv_fields).collect();
    to_csv(&CONTROL_HEADER, &body).expect("in-memory csv")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_parametrization() {
        assert_eq!(energy_at_fraction(-2.0, 0.5), -3.5);
        assert_eq!(energy_at_fraction(-2.0, 1.0), -2.0);
    }

    #[test]
    fn small_scan() {
        let rows = scan_grid(&[0.3, 0.7], &[0.5], 300, 9, Primary::Heavy);
        assert_eq!(rows.len(), 2);
        assert!((rows[0].c_crit - rows[1].c_crit).abs() < 1e-10);
        for r in &rows {
            assert!(r.pass, "{r:?}");
            assert!(r.max_residual < 1e-10);
            assert_eq!(r.halving_failures, 0);
        }
        let csv = scan_csv(&rows);
        assert!(csv.starts_with("mu,c_crit,energy,fraction,samples,skipped,min_eig,min_det,pass\n"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn bad_cells_keep_their_row() {
        let rows = scan_grid(&[0.0, 0.5], &[1.5], 10, 0, Primary::Heavy);
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.error.is_some() && !r.pass));
    }

    #[test]
    fn control_domain() {
        assert!(direct_lc_control(&[-2.0, -1.5], 10, 0).is_err());
    }

    #[test]
    fn direct_chart_is_convex_deep_and_not_just_below_critical() {
        let rows = direct_lc_control(&[-8.0, -1.501], 3000, 1).unwrap();
        assert!(rows[0].direct_convex && rows[0].composed_pass);
        assert!(!rows[1].direct_convex, "{:?}", rows[1]);
        assert!(rows[1].composed_pass);
    }
}
