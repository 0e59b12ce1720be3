use num_complex::Complex64;

use crate::qmath::{near_trivial_matrix_dim, reduce_angle, NearTrivialSpec, SquareMatrix};
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Factors whose angle is this close to zero (mod 2π) are dropped.
pub const PRUNE_TOL: f64 = 1e-12;

/// `U = F₁ F₂ ⋯ F_K` as near-trivial factors over dimension indices.
#[derive(Debug, Clone, PartialEq)]
pub struct NearTrivialSequence {
    pub dim: usize,
    pub factors: Vec<NearTrivialSpec>,
}

impl NearTrivialSequence {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// `F₁ F₂ ⋯ F_K`.
pub fn reconstruct(seq: &NearTrivialSequence) -> Result<SquareMatrix> {
    let mut m = SquareMatrix::identity(seq.dim);
    for f in &seq.factors {
        m = &m * &near_trivial_matrix_dim(f, seq.dim)?;
    }
    Ok(m)
}

/// Rows `j` and `k` of `a` after left multiplication by the rotation `[j, k, θ]`.
fn rotate_rows(a: &mut SquareMatrix, j: usize, k: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    for col in 0..a.dim() {
        let (aj, ak) = (a[(j, col)], a[(k, col)]);
        a[(j, col)] = aj * c - ak * s;
        a[(k, col)] = aj * s + ak * c;
    }
}

fn phase_row(a: &mut SquareMatrix, k: usize, phi: f64) {
    let p = Complex64::cis(phi);
    for col in 0..a.dim() {
        a[(k, col)] *= p;
    }
}

fn negligible(angle: f64) -> bool {
    let r = reduce_angle(angle);
    r < PRUNE_TOL || std::f64::consts::TAU - r < PRUNE_TOL
}

/// Givens-style elimination of a unitary into at most `d²` near-trivial
/// factors.
///
/// Columns are cleared left to right and rows top to bottom. Each non-zero
/// sub-diagonal entry is removed by a phase on its row followed by a rotation
/// against the pivot (a quarter-turn swap if the pivot vanishes); the
/// remaining diagonal is cleared with phases. The factors are the inverses of
/// these steps, so every angle lies in `[0, 2π)`.
pub fn factor_unitary(u: &SquareMatrix, tol: f64) -> Result<NearTrivialSequence> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    u.require_unitary(tol)?;
    let d = u.dim();
    let mut a = u.clone();
    let mut steps = Vec::new();
    for j in 0..d.saturating_sub(1) {
        for k in j + 1..d {
            let b = a[(k, j)];
            if b.norm() <= tol {
                continue;
            }
            let p = a[(j, j)];
            if p.norm() >= tol {
                let psi = p.arg() - b.arg();
                phase_row(&mut a, k, psi);
                steps.push(NearTrivialSpec::phase(k, psi));
                let theta = (-b.norm()).atan2(p.norm());
                rotate_rows(&mut a, j, k, theta);
                steps.push(NearTrivialSpec::rotation(j, k, theta));
            } else {
                let theta = std::f64::consts::FRAC_PI_2;
                rotate_rows(&mut a, j, k, theta);
                steps.push(NearTrivialSpec::rotation(j, k, theta));
            }
        }
    }
    for j in 0..d {
        let phi = -a[(j, j)].arg();
        phase_row(&mut a, j, phi);
        steps.push(NearTrivialSpec::phase(j, phi));
    }
    let factors = steps
        .iter()
        .filter(|s| !negligible(s.active_angle()))
        .map(|s| {
            let inv = s.inverse();
            NearTrivialSpec {
                theta: reduce_angle(inv.theta),
                theta_prime: reduce_angle(inv.theta_prime),
                ..inv
            }
        })
        .collect();
    Ok(NearTrivialSequence { dim: d, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_unitary, seeded_rng};

    #[test]
    fn identity_gives_nothing() {
        assert!(factor_unitary(&SquareMatrix::identity(4), DEFAULT_TOL)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn diagonal_gives_phases_only() {
        let phases = [0.0, 0.5, -2.0, 3.0];
        let u = SquareMatrix::diagonal(&phases.map(Complex64::cis)).unwrap();
        let seq = factor_unitary(&u, DEFAULT_TOL).unwrap();
        assert_eq!(seq.len(), 3);
        for (f, &phi) in seq.factors.iter().zip(&phases[1..]) {
            assert!(f.is_phase());
            assert!((f.theta_prime - reduce_angle(phi)).abs() < 1e-14);
        }
    }

    #[test]
    fn random_round_trip_and_count() {
        let mut rng = seeded_rng(7);
        for d in [2, 3, 4, 5, 8] {
            for _ in 0..10 {
                let u = random_unitary(d, &mut rng);
                let seq = factor_unitary(&u, DEFAULT_TOL).unwrap();
                assert!(seq.len() <= d * d);
                assert!(reconstruct(&seq).unwrap().max_abs_diff(&u) < 1e-12);
                for f in &seq.factors {
                    assert!((0.0..std::f64::consts::TAU).contains(&f.active_angle()));
                }
            }
        }
    }

    #[test]
    fn zero_pivot_uses_swap() {
        let o = Complex64::new(0.0, 0.0);
        let i = Complex64::new(1.0, 0.0);
        let x = SquareMatrix::from_2x2(o, i, i, o);
        let seq = factor_unitary(&x, DEFAULT_TOL).unwrap();
        assert!(reconstruct(&seq).unwrap().max_abs_diff(&x) < 1e-15);
        assert!(factor_unitary(&SquareMatrix::zeros(2), DEFAULT_TOL).is_err());
        assert!(factor_unitary(&x, 0.0).is_err());
    }
}
