//! Fixtures shared by the benchmarks.

use uq2::hopf::random_element;
use uq2::{AlgebraElement, QParam};

pub fn default_q() -> QParam {
    QParam::new(0.5, 2f64.sqrt() - 1.0).expect("valid default q")
}

/// Seeded random elements of degree ≤ 3.
pub fn sample_elements(count: usize, seed: u64) -> Vec<AlgebraElement> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_element(&mut rng, 3, 4)).collect()
}
