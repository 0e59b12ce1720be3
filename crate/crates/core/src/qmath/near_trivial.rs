use num_complex::Complex64;

use super::{elementary_matrix, ElementaryKind, SquareMatrix, UNITARY_TOL};
use crate::{Error, Result};

/// A near-trivial transformation `[x, y, θ, θ′]` over basis indices.
///
/// With `x ≠ y` it rotates by `theta` in the `(x, y)` plane; with `x = y` it
/// multiplies dimension `x` by `e^{iθ′}`. The unused angle is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearTrivialSpec {
    pub x: usize,
    pub y: usize,
    pub theta: f64,
    pub theta_prime: f64,
}

impl NearTrivialSpec {
    pub fn rotation(x: usize, y: usize, theta: f64) -> Self {
        NearTrivialSpec {
            x,
            y,
            theta,
            theta_prime: 0.0,
        }
    }

    pub fn phase(x: usize, theta_prime: f64) -> Self {
        NearTrivialSpec {
            x,
            y: x,
            theta: 0.0,
            theta_prime,
        }
    }

    pub fn is_phase(&self) -> bool {
        self.x == self.y
    }

    /// The angle that is actually in effect.
    pub fn active_angle(&self) -> f64 {
        if self.is_phase() {
            self.theta_prime
        } else {
            self.theta
        }
    }

    /// The inverse transformation.
    pub fn inverse(&self) -> Self {
        NearTrivialSpec {
            x: self.x,
            y: self.y,
            theta: -self.theta,
            theta_prime: -self.theta_prime,
        }
    }
}

/// Dense matrix of `spec` on `n` qubits (dimension `2ⁿ`).
pub fn near_trivial_matrix(spec: &NearTrivialSpec, n: usize) -> Result<SquareMatrix> {
    if n >= usize::BITS as usize {
        return Err(Error::invalid(format!("qubit count {n} too large")));
    }
    near_trivial_matrix_dim(spec, 1 << n)
}

/// Dense matrix of `spec` in dimension `dim`, which need not be a power of two.
pub fn near_trivial_matrix_dim(spec: &NearTrivialSpec, dim: usize) -> Result<SquareMatrix> {
    if spec.x >= dim || spec.y >= dim {
        return Err(Error::invalid(format!(
            "indices ({}, {}) out of range for dimension {dim}",
            spec.x, spec.y
        )));
    }
    if spec.is_phase() {
        let mut m = SquareMatrix::identity(dim);
        m[(spec.x, spec.x)] = Complex64::cis(spec.theta_prime);
        Ok(m)
    } else {
        embed_in_dim(&elementary_matrix(ElementaryKind::R, spec.theta), spec.x, spec.y, dim)
    }
}

/// Identity on `n` qubits except that `u` acts on the pair of basis states
/// `(x, y)`, with `u[(0, 0)]` placed at `(x, x)`.
pub fn embed_two_level(u: &SquareMatrix, x: usize, y: usize, n: usize) -> Result<SquareMatrix> {
    if n >= usize::BITS as usize {
        return Err(Error::invalid(format!("qubit count {n} too large")));
    }
    if u.dim() != 2 {
        return Err(Error::invalid("two-level block must be 2x2"));
    }
    u.require_unitary(UNITARY_TOL)?;
    embed_in_dim(u, x, y, 1 << n)
}

fn embed_in_dim(u: &SquareMatrix, x: usize, y: usize, dim: usize) -> Result<SquareMatrix> {
    if x == y {
        return Err(Error::invalid("two-level embedding needs distinct dimensions"));
    }
    if x >= dim || y >= dim {
        return Err(Error::invalid(format!(
            "indices ({x}, {y}) out of range for dimension {dim}"
        )));
    }
    let mut m = SquareMatrix::identity(dim);
    m[(x, x)] = u[(0, 0)];
    m[(x, y)] = u[(0, 1)];
    m[(y, x)] = u[(1, 0)];
    m[(y, y)] = u[(1, 1)];
    Ok(m)
}
