use num_complex::Complex64;

use super::{elementary_matrix, reduce_angle, ElementaryKind, SquareMatrix, UNITARY_TOL};
use crate::{Error, Result};

/// Below this modulus an off-diagonal (or diagonal) pair counts as zero and
/// the decomposition is treated as degenerate.
const DEGENERATE_TOL: f64 = 1e-12;

/// `U = e^{iα} R_z(β) R_y(γ) R_z(δ)`.
///
/// Output of [`zyz_decompose`] is canonical: `γ ∈ [0, π]`, `β, δ ∈ [0, 2π)`
/// and `α ∈ [0, 2π)`; when `γ ∈ {0, π}` the decomposition sets `δ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZyzAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl ZyzAngles {
    pub fn reconstruct(&self) -> SquareMatrix {
        let rz = |a| elementary_matrix(ElementaryKind::Rz, a);
        let ry = elementary_matrix(ElementaryKind::Ry, self.gamma);
        (&(&rz(self.beta) * &ry) * &rz(self.delta)).scale(Complex64::cis(self.alpha))
    }
}

pub fn zyz_decompose(u: &SquareMatrix) -> Result<ZyzAngles> {
    if u.dim() != 2 {
        return Err(Error::invalid("ZYZ decomposition needs a 2x2 matrix"));
    }
    u.require_unitary(UNITARY_TOL)?;

    let (u00, u01, u10, u11) = (u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
    // U00 = e^{i(α−(β+δ)/2)} cos(γ/2), U10 = e^{i(α+(β−δ)/2)} sin(γ/2),
    // U11 = e^{i(α+(β+δ)/2)} cos(γ/2), U01 = −e^{i(α−(β−δ)/2)} sin(γ/2).
    let (c, s) = (u00.norm(), u10.norm());
    let angles = if s < DEGENERATE_TOL {
        let beta = reduce_angle(u11.arg() - u00.arg());
        ZyzAngles {
            alpha: reduce_angle(u00.arg() + beta / 2.0),
            beta,
            gamma: 0.0,
            delta: 0.0,
        }
    } else if c < DEGENERATE_TOL {
        let beta = reduce_angle(u10.arg() - (-u01).arg());
        ZyzAngles {
            alpha: reduce_angle(u10.arg() - beta / 2.0),
            beta,
            gamma: std::f64::consts::PI,
            delta: 0.0,
        }
    } else {
        let beta = reduce_angle(u10.arg() - u00.arg());
        let delta = reduce_angle(u11.arg() - u10.arg());
        ZyzAngles {
            alpha: reduce_angle(u00.arg() + (beta + delta) / 2.0),
            beta,
            gamma: 2.0 * s.atan2(c),
            delta,
        }
    };
    Ok(angles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn assert_angles(got: ZyzAngles, want: [f64; 4]) {
        let g = [got.alpha, got.beta, got.gamma, got.delta];
        for (a, b) in g.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn identity() {
        assert_angles(zyz_decompose(&SquareMatrix::identity(2)).unwrap(), [0.0; 4]);
    }

    #[test]
    fn hadamard() {
        let h = SquareMatrix::from_2x2(
            re(FRAC_1_SQRT_2),
            re(FRAC_1_SQRT_2),
            re(FRAC_1_SQRT_2),
            re(-FRAC_1_SQRT_2),
        );
        let a = zyz_decompose(&h).unwrap();
        assert_angles(a, [PI / 2.0, 0.0, PI / 2.0, PI]);
        // independent check: e^{iπ/2} R_y(π/2) R_z(π) = H
        let m = (&elementary_matrix(ElementaryKind::Ry, PI / 2.0) * &elementary_matrix(ElementaryKind::Rz, PI))
            .scale(Complex64::cis(PI / 2.0));
        assert!(m.max_abs_diff(&h) < 1e-15);
    }

    #[test]
    fn rz_folds_into_beta() {
        let a = zyz_decompose(&elementary_matrix(ElementaryKind::Rz, 0.7)).unwrap();
        assert_angles(a, [0.0, 0.7, 0.0, 0.0]);
    }

    #[test]
    fn antidiagonal_sets_delta_zero() {
        let x = elementary_matrix(ElementaryKind::X, 0.0);
        let a = zyz_decompose(&x).unwrap();
        assert_eq!(a.gamma, PI);
        assert_eq!(a.delta, 0.0);
        assert!(a.reconstruct().max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = SquareMatrix::from_2x2(re(1.0), re(1.0), re(0.0), re(1.0));
        assert!(matches!(zyz_decompose(&m), Err(Error::InvalidArgument(_))));
        assert!(zyz_decompose(&SquareMatrix::identity(4)).is_err());
    }
}
