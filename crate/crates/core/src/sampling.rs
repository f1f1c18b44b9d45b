//! Seeded sampling helpers.
//!
//! Every sample index gets its own ChaCha stream derived from `(seed, index)`,
//! so results do not depend on how work is split across threads.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Default seed of the command-line tool (`"KEPL"`).
pub const DEFAULT_SEED: u64 = 0x4B45_504C;

/// Generator for sample `index` of a run seeded with `seed`.
pub fn point_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform direction on S³ ⊂ ℝ⁴.
pub fn unit_sphere4(rng: &mut impl Rng) -> [f64; 4] {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.map(|x| x / n);
        }
    }
}

/// Uniform point in the annulus `r0 ≤ ‖x‖ ≤ r1`.
pub fn uniform_annulus(rng: &mut impl Rng, r0: f64, r1: f64) -> [f64; 2] {
    let u: f64 = rng.gen();
    let r = (r0 * r0 + u * (r1 * r1 - r0 * r0)).sqrt();
    let th = rng.gen::<f64>() * std::f64::consts::TAU;
    [r * th.cos(), r * th.sin()]
}

/// Uniform point in the disc `‖x‖ ≤ radius`.
pub fn uniform_disc(rng: &mut impl Rng, radius: f64) -> [f64; 2] {
    uniform_annulus(rng, 0.0, radius)
}
