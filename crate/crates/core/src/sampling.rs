//! Seeded random draws.
//!
//! Every draw is addressed by `(seed, stream)`: the generator for item `k`
//! is `ChaCha8Rng::seed_from_u64(seed)` switched to stream `k`. Parallel
//! callers therefore get identical values regardless of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::norm;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniformly distributed point on the unit sphere of `R^dim`.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&v);
        if n > 1e-300 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// The `k`-th unit vector of the sequence identified by `seed`.
pub fn seeded_unit_vector(seed: u64, k: u64, dim: usize) -> Vec<f64> {
    unit_vector(&mut rng_for(seed, k), dim)
}

pub fn seeded_unit_vectors(seed: u64, count: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..count as u64)
        .map(|k| seeded_unit_vector(seed, k, dim))
        .collect()
}
