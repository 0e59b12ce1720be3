//! Seeded sampling of Haar-random unitaries and states.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::qmath::SquareMatrix;
use crate::sim::StateVector;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
}

/// Haar-distributed `d × d` unitary: Gram–Schmidt on a complex Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> SquareMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..d).map(|_| (0..d).map(|_| gaussian(rng)).collect()).collect();
    for k in 0..d {
        // two passes keep the columns orthogonal to working precision
        for _ in 0..2 {
            for j in 0..k {
                let proj: Complex64 = cols[j].iter().zip(&cols[k]).map(|(q, v)| q.conj() * v).sum();
                let (head, tail) = cols.split_at_mut(k);
                for (v, q) in tail[0].iter_mut().zip(&head[j]) {
                    *v -= proj * q;
                }
            }
        }
        normalize(&mut cols[k]);
    }
    let mut m = SquareMatrix::zeros(d);
    for (k, c) in cols.iter().enumerate() {
        m.set_column(k, c);
    }
    m
}

/// Haar-distributed pure state on `n` qubits.
pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StateVector {
    let mut amps: Vec<Complex64> = (0..1usize << n).map(|_| gaussian(rng)).collect();
    normalize(&mut amps);
    StateVector::new(amps).expect("normalised state")
}

/// Uniform angle in `[0, 2π)`.
pub fn random_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.0..std::f64::consts::TAU)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_and_reproducible() {
        for d in [1, 2, 3, 8, 16] {
            let u = random_unitary(d, &mut seeded_rng(3));
            assert!(u.unitarity_error() < 1e-13, "d={d}");
            assert_eq!(u, random_unitary(d, &mut seeded_rng(3)));
        }
        let s = random_state(5, &mut seeded_rng(1));
        assert!((s.norm() - 1.0).abs() < 1e-14);
    }
}
