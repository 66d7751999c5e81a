//! Seeded random sampling helpers shared by the oracle suites and the CLI.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::octonion::Octonion;

pub type SeededRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DVector<f64> {
    DVector::from_fn(dim, |_, _| rng.sample(StandardNormal))
}

/// Uniformly distributed on the unit sphere.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DVector<f64> {
    loop {
        let v = gaussian_vector(rng, dim);
        let n = v.norm();
        if n > 1e-6 {
            return v / n;
        }
    }
}

pub fn gaussian_octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    let mut c = [0.0; 8];
    c.iter_mut().for_each(|x| *x = rng.sample(StandardNormal));
    Octonion::new(c)
}

/// Octonion with small integer coefficients; products stay exact in f64.
pub fn integer_octonion<R: Rng + ?Sized>(rng: &mut R, bound: i32) -> Octonion {
    let mut c = [0.0; 8];
    c.iter_mut()
        .for_each(|x| *x = f64::from(rng.random_range(-bound..=bound)));
    Octonion::new(c)
}
