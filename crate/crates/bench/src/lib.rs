//! Fixtures shared by the criterion benches.

use delone_core::lattice::Lattice;
use delone_core::matrix::IntMatrix;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A nonsingular `n × n` integer matrix with entries in `[-range, range]`.
pub fn random_square(n: usize, range: i64, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect();
        if !IntMatrix::from_i64_rows(&m).determinant().is_zero() {
            return m;
        }
    }
}

pub fn random_matrix(rows: usize, cols: usize, range: i64, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    IntMatrix::from_i64_rows(&m)
}

/// A skewed basis of `Zⁿ`: unimodular, so LLL has real work to do.
pub fn skewed_lattice(n: usize, seed: u64) -> Lattice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for _ in 0..4 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let f = rng.gen_range(-3..=3);
        for k in 0..n {
            b[i][k] += f * b[j][k];
        }
    }
    Lattice::from_i64_basis(&b).expect("unimodular basis")
}
