//! Shared fixtures for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wulffbez_core::inequality::random_polytope;
use wulffbez_core::Polytope;

/// `count` random lattice polytopes in `R^n`, reproducible from `seed`.
pub fn random_bodies(seed: u64, n: usize, count: usize) -> Vec<Polytope> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_polytope(&mut rng, n, 4)).collect()
}

/// Vertex cloud of a random body, for hull timing.
pub fn point_cloud(seed: u64, n: usize) -> Vec<wulffbez_core::Point> {
    random_bodies(seed, n, 4).iter().flat_map(|p| p.vertices().to_vec()).collect()
}
