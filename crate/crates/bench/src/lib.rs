//! Benchmarks for `nilforge`; see `benches/`.

use nilforge::{LieElement, Result};

/// A dense-ish element of `F_{k,s}` with small rational coefficients,
/// deterministic in `seed`.
pub fn sample_element(k: usize, s: usize, seed: u64) -> Result<LieElement> {
    let dim = nilforge::FreeLieAlgebra::get(k, s)?.dim();
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let coords: Vec<nilforge::Rational> = (0..dim)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = ((state >> 33) % 9) as i64 - 4;
            let d = ((state >> 40) % 3) as i64 + 1;
            nilforge::Rational::new(n.into(), d.into())
        })
        .collect();
    LieElement::from_coords(k, s, &coords)
}
