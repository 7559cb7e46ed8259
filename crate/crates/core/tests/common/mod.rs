#![allow(dead_code)]

use quatspec::{QMatrix, Quaternion};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn quaternion(rng: &mut impl Rng, scale: f64) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

pub fn matrix(rng: &mut impl Rng, n: usize) -> QMatrix {
    QMatrix::from_fn(n, |_, _| quaternion(rng, 1.0))
}

/// Random matrix of size `1..=max_n`.
pub fn sized_matrix(rng: &mut impl Rng, max_n: usize) -> QMatrix {
    let n = rng.gen_range(1..=max_n);
    matrix(rng, n)
}

/// Random unit imaginary quaternion.
pub fn unit_imaginary(rng: &mut impl Rng) -> Quaternion {
    loop {
        let v = quaternion(rng, 1.0).im();
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v * (1.0 / n);
        }
    }
}

pub fn rel_diff(a: &QMatrix, b: &QMatrix) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}
