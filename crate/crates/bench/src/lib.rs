//! Shared fixtures for the criterion benchmarks.

use rand::{Rng, SeedableRng};

/// A random sparse integer matrix with entries in -5..=5, seeded.
pub fn random_int_matrix(rows: usize, cols: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(0.6) { rng.gen_range(-5..=5) } else { 0 })
                .collect()
        })
        .collect()
}

/// Random sparse triplets for a GF(p) matrix with the given fill.
pub fn random_triplets(
    rows: usize,
    cols: usize,
    fill: f64,
    p: u32,
    seed: u64,
) -> Vec<(usize, usize, u32)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(fill) {
                out.push((r, c, rng.gen_range(1..p)));
            }
        }
    }
    out
}
