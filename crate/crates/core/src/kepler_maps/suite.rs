//! Seeded property suites over the map chain, shared by the command-line
//! tool and the tests.

use rand::Rng;
use rayon::prelude::*;

use super::{
    angular_sign, compose_embedding, kepler_energy, ligon_schaaf, ligon_schaaf_frame,
    rkp_hamiltonian, sample_bounded_energy_surface, sample_negative_energy, Branch, MapId,
    SymplecticityCheck,
};
use crate::convexity_geom::f_value;
use crate::sampling::point_rng;
use crate::Result;

fn max_of(xs: impl ParallelIterator<Item = Result<f64>>) -> Result<f64> {
    xs.try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// Largest of `|‖r‖−1|, |r·s|, |‖u‖−1|, |‖v‖−1|, |u·v|, |−1/(2‖s‖²) − K|`
/// over `samples` points of `P₋`.
pub fn ligon_schaaf_defect(samples: usize, seed: u64) -> Result<f64> {
    max_of((0..samples as u64).into_par_iter().map(|i| {
        let st = sample_negative_energy(&mut point_rng(seed, i));
        let fr = ligon_schaaf_frame(&st)?;
        let rs = ligon_schaaf(&st)?;
        let k = kepler_energy(&st)?;
        Ok([
            (rs.r.norm() - 1.0).abs(),
            rs.r.dot(&rs.s).abs(),
            (fr.u.norm() - 1.0).abs(),
            (fr.v.norm() - 1.0).abs(),
            fr.u.dot(&fr.v).abs(),
            (-1.0 / (2.0 * rs.s.norm_squared()) - k).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max))
    }))
}

/// Worst symplecticity defect (at `h` and `h/2`) of each map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticDefects {
    pub ligon_schaaf: f64,
    pub levi_civita: f64,
    pub composed: f64,
}

impl SymplecticDefects {
    pub fn max(&self) -> f64 {
        self.ligon_schaaf.max(self.levi_civita).max(self.composed)
    }
}

/// Defects at `points` seeded samples of `P₋`; the Levi-Civita chart is
/// tested at the composed images of the same samples.
pub fn symplecticity_defects(points: usize, seed: u64, h: f64) -> Result<SymplecticDefects> {
    let worst = |c: SymplecticityCheck| c.defect.max(c.defect_half_step);
    let rows: Vec<[f64; 3]> = (0..points as u64)
        .into_par_iter()
        .map(|i| {
            let x = sample_negative_energy(&mut point_rng(seed, i)).to_array();
            let lc = MapId::Composed.apply(&x)?;
            Ok([
                worst(SymplecticityCheck::run(MapId::LigonSchaaf, &x, h)?),
                worst(SymplecticityCheck::run(MapId::LeviCivita, &lc, h)?),
                worst(SymplecticityCheck::run(MapId::Composed, &x, h)?),
            ])
        })
        .collect::<Result<_>>()?;
    let col = |k: usize| rows.iter().map(|r| r[k]).fold(0.0, f64::max);
    Ok(SymplecticDefects {
        ligon_schaaf: col(0),
        levi_civita: col(1),
        composed: col(2),
    })
}

/// Energy correspondence of the composed embedding on bounded energy
/// surfaces with `c` uniform in `[−8, −1.55]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyCorrespondence {
    pub sigma: i8,
    /// `max |F(Φ(q, p), H(q, p))|` over both branches.
    pub max_residual: f64,
    /// `max |Φ₊ + Φ₋|`
    pub max_antipodal_gap: f64,
}

pub fn energy_correspondence(samples: usize, seed: u64) -> Result<EnergyCorrespondence> {
    let rows: Vec<[f64; 2]> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = point_rng(seed, i);
            let c = rng.gen_range(-8.0..=-1.55);
            let st = sample_bounded_energy_surface(c, &mut rng)?;
            let h = rkp_hamiltonian(&st)?;
            let p = compose_embedding(&st, Branch::Plus)?;
            let m = compose_embedding(&st, Branch::Minus)?;
            let res = f_value(&p, h).abs().max(f_value(&m, h).abs());
            let gap = (p.z + m.z).norm().max((p.w + m.w).norm());
            Ok([res, gap])
        })
        .collect::<Result<_>>()?;
    Ok(EnergyCorrespondence {
        sigma: angular_sign().value(),
        max_residual: rows.iter().map(|r| r[0]).fold(0.0, f64::max),
        max_antipodal_gap: rows.iter().map(|r| r[1]).fold(0.0, f64::max),
    })
}
