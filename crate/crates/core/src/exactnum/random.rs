//! Seeded random polynomials for property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rat::rat;
use super::Poly;

/// Default seed for every randomized check.
pub const DEFAULT_SEED: u64 = 20_240_611;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Degree exactly `degree`; coefficients `p/q` with `|p| <= 9`, `1 <= q <= 5`.
pub fn random_poly<R: Rng>(rng: &mut R, degree: usize) -> Poly {
    let mut coeffs: Vec<_> = (0..=degree).map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=5))).collect();
    while coeffs[degree] == rat(0, 1) {
        coeffs[degree] = rat(rng.random_range(-9..=9), rng.random_range(1..=5));
    }
    Poly::new(coeffs)
}
