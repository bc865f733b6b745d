//! Fixtures shared by the benchmarks.

use lietensor_core::catalog::AlgebraSpec;
use lietensor_core::{LieAlgebra, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Integer matrix with entries in `-9..=9`, rank-deficient by construction:
/// the last `rows / 4` rows are sums of earlier ones.
pub fn dependent_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free = rows - rows / 4;
    let mut values: Vec<i64> = (0..free * cols).map(|_| rng.gen_range(-9..=9)).collect();
    for r in free..rows {
        let (a, b) = (rng.gen_range(0..free), rng.gen_range(0..free));
        let row: Vec<i64> = (0..cols).map(|c| values[a * cols + c] + values[b * cols + c]).collect();
        values.extend(row);
        debug_assert_eq!(values.len(), (r + 1) * cols);
    }
    Matrix::from_i64(rows, cols, &values)
}

pub fn algebra(spec: &str) -> LieAlgebra {
    spec.parse::<AlgebraSpec>()
        .and_then(|s| s.build())
        .expect("benchmark specs are valid")
}
