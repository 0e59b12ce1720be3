//! Circuits for near-trivial transformations `[x, y, θ, θ′]`.
//!
//! Register order is `w` (data, `n` qubits), `x`, `y` (`n` each), `b` (2) and,
//! for the universal circuit, `r` (`m`). `C_a` classifies `w` against `x` and
//! `y` into the flag register `b`, a circuit on `b` performs the rotation or
//! phase, and the mirror image of `C_a` uncomputes the classification.

mod program;

pub use program::{
    apply_near_trivial, encode_spec, format_programs, parse_programs, program_operator, programs_operator,
    run_near_trivial, EncodedProgram, NearTrivialRun, B_INIT, LEAKAGE_THRESHOLD,
};

use crate::circuit::{compose, Angle, Axis, Circuit, ControlSpec, Gate, GateKind, RegisterLayout};
use crate::encoders::{controlled_block_gates, BlockKind, MAX_ENCODING_BITS};
use crate::{Error, Result};

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("register width n must be at least 1"));
    }
    if 3 * n + 2 > crate::bits::MAX_BITS {
        return Err(Error::Capacity {
            what: "register width n",
            requested: n,
            limit: (crate::bits::MAX_BITS - 2) / 3,
        });
    }
    Ok(())
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("encoding width m must be at least 1"));
    }
    if m > MAX_ENCODING_BITS {
        return Err(Error::Capacity {
            what: "encoding width",
            requested: m,
            limit: MAX_ENCODING_BITS,
        });
    }
    Ok(())
}

/// `w, x, y, b` for the exact circuit; `w, x, y, b, r` for the universal one.
pub fn cu_layout(n: usize, m: usize) -> Result<RegisterLayout> {
    RegisterLayout::near_trivial(n, m)
}

/// The classifier `C_a` on `3n + 2` qubits.
///
/// From `b = 10` it leaves `|w, x, y⟩` and sets `b` to `00` with `w` cleared
/// when `w = x ≠ y`, to `01` with `w` cleared when `w = y ≠ x`, keeps `10` when
/// `w ∉ {x, y}`, and sets `11` when `w = x = y`.
pub fn build_ca(n: usize) -> Result<Circuit> {
    check_n(n)?;
    let w = |i: usize| i;
    let x = |i: usize| n + i;
    let y = |i: usize| 2 * n + i;
    let (b1, b2) = (3 * n, 3 * n + 1);
    let mut c = Circuit::new(3 * n + 2);

    let fan = |c: &mut Circuit| -> Result<()> {
        for i in 0..n {
            c.push(Gate::x(x(i)).controlled_by(ControlSpec::on(w(i))))?;
            c.push(Gate::x(y(i)).controlled_by(ControlSpec::on(w(i))))?;
        }
        Ok(())
    };

    // x ← x⊕w, y ← y⊕w; then b₂ ^= [y⊕w = 0] and b₁ ^= [x⊕w = 0] ⊕ b₂
    fan(&mut c)?;
    c.push(Gate::x(b2).with_controls((0..n).map(|i| ControlSpec::off(y(i)))))?;
    c.push(Gate::x(b1).with_controls((0..n).map(|i| ControlSpec::off(x(i)))))?;
    c.push(Gate::x(b1).controlled_by(ControlSpec::on(b2)))?;
    fan(&mut c)?;

    for i in 0..n {
        c.push(Gate::x(w(i)).with_controls([ControlSpec::off(b1), ControlSpec::off(b2), ControlSpec::on(x(i))]))?;
        c.push(Gate::x(w(i)).with_controls([ControlSpec::off(b1), ControlSpec::on(b2), ControlSpec::on(y(i))]))?;
    }
    Ok(c)
}

/// `C^1_0(R(θ))` followed by `C(P(θ′))` on `(b₁, b₂)`, phase-exact.
pub fn build_cb_exact(theta: f64, theta_prime: f64) -> Result<Circuit> {
    let mut c = Circuit::new(2);
    c.push(Gate::new(GateKind::Ry(Angle::new(2.0 * theta)?), 1).controlled_by(ControlSpec::off(0)))?;
    c.push(Gate::new(GateKind::Rz(Angle::new(theta_prime)?), 1).controlled_by(ControlSpec::on(0)))?;
    c.push(Gate::rotation(Axis::Z, Angle::new(theta_prime / 2.0)?, 0))?;
    c.add_global_phase(theta_prime / 4.0)?;
    Ok(c)
}

/// `C_R` then `C_P` on `(b₁, b₂)` sharing the register on qubits `2..2 + m`.
pub fn build_cb_universal(m: usize) -> Result<Circuit> {
    check_m(m)?;
    let r: Vec<usize> = (2..2 + m).collect();
    let mut gates = controlled_block_gates(BlockKind::Cr, 0, 1, &r);
    gates.extend(controlled_block_gates(BlockKind::Cp, 0, 1, &r));
    Circuit::from_gates(2 + m, gates)
}

/// `C_a`, exact `C_b` on `b`, mirror image of `C_a`.
pub fn build_cu_exact(n: usize, theta: f64, theta_prime: f64) -> Result<Circuit> {
    let ca = build_ca(n)?;
    let mut c = ca.clone();
    c.append_mapped(&build_cb_exact(theta, theta_prime)?, &[3 * n, 3 * n + 1])?;
    compose(&c, &ca.inverse())
}

/// `C_a`, universal `C_b′` on `b` and `r`, mirror image of `C_a`, on
/// `3n + 2 + m` qubits.
pub fn build_cu_universal(n: usize, m: usize) -> Result<Circuit> {
    check_m(m)?;
    let width = 3 * n + 2 + m;
    let ca = build_ca(n)?.widened(width)?;
    let mut c = ca.clone();
    let map: Vec<usize> = (3 * n..width).collect();
    c.append_mapped(&build_cb_universal(m)?, &map)?;
    compose(&c, &ca.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::gate_set_report;
    use crate::qmath::{near_trivial_matrix, NearTrivialSpec, SquareMatrix};
    use crate::sim::{circuit_unitary, effective_data_operator, run_sparse, SparseState};
    use num_complex::Complex64;

    fn index(n: usize, w: usize, x: usize, y: usize, b: usize) -> usize {
        (((w << n | x) << n | y) << 2) | b
    }

    /// Brute-force classification by its defining case table.
    fn classify(w: usize, x: usize, y: usize) -> (usize, usize) {
        match (w == x, w == y) {
            (true, false) => (0, 0b00),
            (false, true) => (0, 0b01),
            (false, false) => (w, 0b10),
            (true, true) => (w, 0b11),
        }
    }

    #[test]
    fn ca_case_table_exhaustive() {
        for n in 1..=2 {
            let ca = build_ca(n).unwrap();
            assert_eq!(ca.gate_count(), 6 * n + 3);
            assert!(gate_set_report(&ca).passes_universal_set());
            for w in 0..1 << n {
                for x in 0..1 << n {
                    for y in 0..1 << n {
                        let s = SparseState::basis(3 * n + 2, index(n, w, x, y, 0b10)).unwrap();
                        let out = run_sparse(&ca, &s).unwrap();
                        let (z, b) = classify(w, x, y);
                        assert_eq!(
                            out.entries().collect::<Vec<_>>(),
                            vec![(index(n, z, x, y, b), Complex64::new(1.0, 0.0))]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cb_exact_cases() {
        let (theta, tp) = (0.4, 1.1);
        let u = circuit_unitary(&build_cb_exact(theta, tp).unwrap()).unwrap();
        let expect = |r, c| -> Complex64 {
            match (r, c) {
                (0, 0) | (1, 1) => Complex64::new(theta.cos(), 0.0),
                (1, 0) => Complex64::new(theta.sin(), 0.0),
                (0, 1) => Complex64::new(-theta.sin(), 0.0),
                (2, 2) => Complex64::new(1.0, 0.0),
                (3, 3) => Complex64::cis(tp),
                _ => Complex64::new(0.0, 0.0),
            }
        };
        for r in 0..4 {
            for c in 0..4 {
                assert!((u[(r, c)] - expect(r, c)).norm() < 1e-14, "({r},{c})");
            }
        }
    }

    #[test]
    fn cu_exact_matches_oracle_without_phase_allowance() {
        for n in 1..=2 {
            for (x, y, theta, tp) in [(0, 1, 0.7, 2.0), (1, 1, 0.7, 2.0), (2, 1, -1.2, 0.3), (3, 3, 0.1, -2.5)] {
                if x >> n != 0 || y >> n != 0 {
                    continue;
                }
                let c = build_cu_exact(n, theta, tp).unwrap();
                let layout = cu_layout(n, 0).unwrap();
                let e = effective_data_operator(&c, &layout, &[("x", x), ("y", y), ("b", 0b10)]).unwrap();
                assert!(e.leakage <= 1e-12);
                let spec = NearTrivialSpec {
                    x,
                    y,
                    theta,
                    theta_prime: tp,
                };
                let oracle = near_trivial_matrix(&spec, n).unwrap();
                assert!(e.matrix.max_abs_diff(&oracle) < 1e-12, "n={n} x={x} y={y}");
            }
        }
    }

    #[test]
    fn cu_universal_small_examples() {
        let c = build_cu_universal(1, 2).unwrap();
        let layout = cu_layout(1, 2).unwrap();
        let e = effective_data_operator(&c, &layout, &[("x", 0), ("y", 1), ("b", 2), ("r", 0b01)]).unwrap();
        assert!(e.leakage <= 1e-12);
        // columns of R(π/2) up to one global phase
        let p = e.matrix[(1, 0)];
        assert!((p.norm() - 1.0).abs() < 1e-12);
        assert!((e.matrix[(0, 1)] + p).norm() < 1e-12);
        assert!(e.matrix[(0, 0)].norm() < 1e-12 && e.matrix[(1, 1)].norm() < 1e-12);

        let e = effective_data_operator(&c, &layout, &[("x", 1), ("y", 1), ("b", 2), ("r", 0b01)]).unwrap();
        let p = e.matrix[(0, 0)];
        assert!((e.matrix[(1, 1)] + p).norm() < 1e-12);
        let z = SquareMatrix::diagonal(&[p, -p]).unwrap();
        assert!(e.matrix.max_abs_diff(&z) < 1e-12);
    }

    #[test]
    fn gate_counts_are_linear() {
        for n in 1..=3 {
            for m in 1..=4 {
                let c = build_cu_universal(n, m).unwrap();
                assert_eq!(c.width(), 3 * n + 2 + m);
                assert_eq!(c.gate_count(), 12 * n + 20 * m + 10);
                assert!(gate_set_report(&c).passes_universal_set());
            }
        }
        assert!(!gate_set_report(&build_cu_exact(1, 0.3, 0.2).unwrap()).passes_universal_set());
        assert!(build_ca(0).is_err());
        assert!(build_cu_universal(1, 0).is_err());
    }
}
