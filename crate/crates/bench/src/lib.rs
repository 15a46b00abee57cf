//! Shared inputs for the kernel benchmarks.

use std::sync::Arc;

use qsp_core::{ExtElem, ExtField, FpPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn field(p: u64, n: usize) -> Arc<ExtField> {
    Arc::new(ExtField::with_cap(p, n, u128::MAX).expect("benchmark field"))
}

pub fn poly(p: u64, coeffs: &[i64]) -> FpPoly {
    FpPoly::from_i64(p, coeffs).expect("benchmark polynomial")
}

/// Seeded random elements, so every run measures the same inputs.
pub fn elements(field: &ExtField, count: usize) -> Vec<ExtElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    (0..count).map(|_| field.random(&mut rng)).collect()
}

/// X^16 + X + 1 over F_2, which splits at n = 255.
pub fn x16_x_1() -> FpPoly {
    let mut c = vec![0i64; 17];
    c[0] = 1;
    c[1] = 1;
    c[16] = 1;
    poly(2, &c)
}
