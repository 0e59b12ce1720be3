use std::f64::consts::TAU;

use num_complex::Complex64;

use super::SquareMatrix;
use crate::{Error, Result};

/// Number of phases scanned when the trace gives no phase information.
const PHASE_SCAN_STEPS: usize = 4096;

/// Spectral norm `‖A − B‖` (largest singular value of the difference).
pub fn operator_distance(a: &SquareMatrix, b: &SquareMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(spectral_norm(&(a - b)))
}

fn spectral_norm(m: &SquareMatrix) -> f64 {
    if m.max_abs() == 0.0 {
        return 0.0;
    }
    m.to_nalgebra().singular_values().iter().copied().fold(0.0, f64::max)
}

/// Result of [`distance_up_to_global_phase`]: `B ≈ e^{i·phase} A` with
/// `distance = ‖e^{i·phase} A − B‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDistance {
    pub distance: f64,
    /// In `[0, 2π)`.
    pub phase: f64,
}

/// Operator distance after removing the best global phase between `a` and `b`.
///
/// The phase is `arg tr(A†B)`; when that trace vanishes a uniform scan over
/// [`PHASE_SCAN_STEPS`] phases is used instead.
pub fn distance_up_to_global_phase(a: &SquareMatrix, b: &SquareMatrix) -> Result<PhaseDistance> {
    if a.dim() != b.dim() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let overlap = (&a.adjoint() * b).trace();
    if overlap.norm() > 1e-12 * a.dim() as f64 {
        let phase = super::reduce_angle(overlap.arg());
        let distance = spectral_norm(&(&a.scale(Complex64::cis(phase)) - b));
        return Ok(PhaseDistance { distance, phase });
    }
    let mut best = PhaseDistance {
        distance: f64::INFINITY,
        phase: 0.0,
    };
    for k in 0..PHASE_SCAN_STEPS {
        let phase = TAU * k as f64 / PHASE_SCAN_STEPS as f64;
        let distance = spectral_norm(&(&a.scale(Complex64::cis(phase)) - b));
        if distance < best.distance {
            best = PhaseDistance { distance, phase };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{elementary_matrix, ElementaryKind};
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn circular_gap(a: f64) -> f64 {
        let r = a.rem_euclid(TAU);
        r.min(TAU - r)
    }

    #[test]
    fn basic_values() {
        let i2 = SquareMatrix::identity(2);
        let z = SquareMatrix::diagonal(&[re(1.0), re(-1.0)]).unwrap();
        assert_eq!(operator_distance(&i2, &i2).unwrap(), 0.0);
        assert!((operator_distance(&i2, &z).unwrap() - 2.0).abs() < 1e-12);
        assert!(operator_distance(&i2, &SquareMatrix::identity(4)).is_err());
    }

    #[test]
    fn rotation_distance_closed_form() {
        // R(θ) and R(θ′) share the eigenbasis (1, ±i)/√2; the eigenvalue gap
        // is |e^{iθ} − e^{iθ′}| = 2|sin((θ−θ′)/2)|.
        let samples = [(0.1, 2.9), (5.0, -1.0), (3.3, 3.2), (0.0, PI), (-2.0, 4.0)];
        for (k, &(t1, t2)) in samples.iter().cycle().take(20).enumerate() {
            let (t1, t2) = (t1 + 0.05 * k as f64, t2 - 0.03 * k as f64);
            let d = operator_distance(
                &elementary_matrix(ElementaryKind::R, t1),
                &elementary_matrix(ElementaryKind::R, t2),
            )
            .unwrap();
            assert!((d - 2.0 * ((t1 - t2) / 2.0).sin().abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn global_phase_removed() {
        let u = elementary_matrix(ElementaryKind::Ry, 1.2);
        let v = u.scale(Complex64::cis(0.3));
        let pd = distance_up_to_global_phase(&u, &v).unwrap();
        assert!(pd.distance < 1e-14);
        assert!((pd.phase - 0.3).abs() < 1e-14);

        let i2 = SquareMatrix::identity(2);
        let pd = distance_up_to_global_phase(&i2, &i2).unwrap();
        assert_eq!((pd.distance, pd.phase), (0.0, 0.0));
    }

    #[test]
    fn rotation_with_phase() {
        for k in 0..20 {
            let t1 = 0.31 * k as f64;
            let t2 = t1 + 1.4 * ((k as f64 * 0.7).sin());
            let phi = 0.29 * k as f64 + 0.1;
            let a = elementary_matrix(ElementaryKind::R, t1);
            let b = elementary_matrix(ElementaryKind::R, t2).scale(Complex64::cis(phi));
            let pd = distance_up_to_global_phase(&a, &b).unwrap();
            let gap = t1 - t2;
            assert!((pd.distance - 2.0 * (gap / 2.0).sin().abs()).abs() < 1e-12);
            assert!(circular_gap(pd.phase - phi) < 1e-12);
        }
    }

    #[test]
    fn rotation_with_phase_past_quarter_turn_prefers_sign_flip() {
        // For |θ−θ′| > π/2 the phase π is closer: R(θ) ≈ −R(θ′+π).
        let a = elementary_matrix(ElementaryKind::R, 0.0);
        let b = elementary_matrix(ElementaryKind::R, 2.5);
        let pd = distance_up_to_global_phase(&a, &b).unwrap();
        assert!((pd.distance - 2.0 * (2.5f64 / 2.0).cos().abs()).abs() < 1e-12);
        assert!(circular_gap(pd.phase - PI) < 1e-12);
    }

    #[test]
    fn zero_trace_falls_back_to_scan() {
        // tr(I† Z) = 0; the best phase is ±π/2 giving |1 − i|·… = √2.
        let i2 = SquareMatrix::identity(2);
        let z = SquareMatrix::diagonal(&[re(1.0), re(-1.0)]).unwrap();
        let pd = distance_up_to_global_phase(&i2, &z).unwrap();
        assert!((pd.distance - 2f64.sqrt()).abs() < 1e-9);
    }
}
