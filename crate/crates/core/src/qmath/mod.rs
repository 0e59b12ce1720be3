//! Complex linear algebra and the exact matrix oracles every circuit is
//! checked against.
//!
//! Rotation convention: `R_y(a) = exp(-i a Y / 2)` and `R_z(a) = exp(-i a Z / 2)`.
//! Under this convention the real rotation `R(θ)` of a near-trivial
//! transformation equals `R_y(2θ)`.

mod distance;
mod elementary;
mod matrix;
mod near_trivial;
pub mod text;
mod zyz;

pub use distance::{distance_up_to_global_phase, operator_distance, PhaseDistance};
pub use elementary::{elementary_matrix, ElementaryKind};
pub use matrix::{SquareMatrix, UNITARY_TOL};
pub use near_trivial::{embed_two_level, near_trivial_matrix, near_trivial_matrix_dim, NearTrivialSpec};
pub use zyz::{zyz_decompose, ZyzAngles};

use std::f64::consts::TAU;

/// Reduces an angle into `[0, 2π)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}
