use std::ops::Range;

use super::gray_code;
use crate::bits::BitString;
use crate::circuit::{Angle, Axis, Circuit, ControlSpec, Gate};
use crate::qmath::{elementary_matrix, zyz_decompose, ElementaryKind, SquareMatrix, UNITARY_TOL};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct TwoLevelCircuit {
    pub circuit: Circuit,
    pub gray_code: Vec<BitString>,
    /// Number of multi-controlled X gates on each side of the `U` block.
    pub ladder_len: usize,
    /// Gate indices of the controlled-`U` block.
    pub u_gates: Range<usize>,
}

/// Circuit on `x.len()` qubits that applies `u` to the basis pair `(x, y)`,
/// with `u[(0, 0)]` acting on `|x⟩`, and leaves every other basis state alone.
///
/// An X ladder walks `|x⟩` along the Gray code to the neighbour of `|y⟩`, a
/// fully controlled `u` acts on the last differing bit, and the ladder is
/// undone. `u` is realised through its ZYZ angles with generic-angle gates.
pub fn build_two_level_circuit(x: BitString, y: BitString, u: &SquareMatrix) -> Result<TwoLevelCircuit> {
    if x == y {
        return Err(Error::invalid("two-level circuit needs x != y"));
    }
    if u.dim() != 2 {
        return Err(Error::invalid("two-level block must be 2x2"));
    }
    u.require_unitary(UNITARY_TOL)?;
    let code = gray_code(x, y)?;
    let n = x.len();
    let mut circuit = Circuit::new(n);

    let step = |from: BitString, to: BitString| -> (usize, Vec<ControlSpec>) {
        let target = (0..n)
            .find(|&i| from.bit(i) != to.bit(i))
            .expect("adjacent codes differ");
        let controls = (0..n)
            .filter(|&i| i != target)
            .map(|i| ControlSpec::new(i, from.bit(i)))
            .collect();
        (target, controls)
    };

    let ladder: Vec<Gate> = code[..code.len() - 1]
        .windows(2)
        .map(|w| {
            let (t, cs) = step(w[0], w[1]);
            Gate::x(t).with_controls(cs)
        })
        .collect();
    for g in &ladder {
        circuit.push(g.clone())?;
    }

    let last = code[code.len() - 2];
    let (target, controls) = step(last, y);
    let u_prime = if last.bit(target) {
        let x_gate = elementary_matrix(ElementaryKind::X, 0.0);
        &(&x_gate * u) * &x_gate
    } else {
        u.clone()
    };
    let start = circuit.gate_count();
    push_controlled_unitary(&mut circuit, &u_prime, target, &controls)?;
    let u_gates = start..circuit.gate_count();

    for g in ladder.iter().rev() {
        circuit.push(g.clone())?;
    }
    Ok(TwoLevelCircuit {
        circuit,
        gray_code: code,
        ladder_len: ladder.len(),
        u_gates,
    })
}

fn push_controlled_unitary(c: &mut Circuit, u: &SquareMatrix, target: usize, controls: &[ControlSpec]) -> Result<()> {
    if u.max_abs_diff(&elementary_matrix(ElementaryKind::X, 0.0)) <= 1e-15 {
        return c.push(Gate::x(target).with_controls(controls.iter().copied()));
    }
    let a = zyz_decompose(u)?;
    for (axis, angle) in [(Axis::Z, a.delta), (Axis::Y, a.gamma), (Axis::Z, a.beta)] {
        if angle != 0.0 {
            c.push(Gate::rotation(axis, Angle::new(angle)?, target).with_controls(controls.iter().copied()))?;
        }
    }
    push_controlled_phase(c, a.alpha, controls)
}

/// Multiplies the subspace where every control matches by `e^{iφ}`.
fn push_controlled_phase(c: &mut Circuit, phi: f64, controls: &[ControlSpec]) -> Result<()> {
    if phi == 0.0 {
        return Ok(());
    }
    match controls.split_last() {
        None => c.add_global_phase(phi),
        Some((last, rest)) => {
            // R_z(±φ) on the last control is e^{−iφ/2} · (phase e^{iφ} on the
            // matching value); the e^{iφ/2} left over is controlled by the rest
            let psi = if last.polarity { phi } else { -phi };
            c.push(Gate::rotation(Axis::Z, Angle::new(psi)?, last.qubit).with_controls(rest.iter().copied()))?;
            push_controlled_phase(c, phi / 2.0, rest)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{embed_two_level, near_trivial_matrix, NearTrivialSpec};
    use crate::sim::circuit_unitary;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn hadamard() -> SquareMatrix {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        SquareMatrix::from_2x2(h, h, h, -h)
    }

    #[test]
    fn hadamard_on_010_101() {
        let t = build_two_level_circuit(b("010"), b("101"), &hadamard()).unwrap();
        assert_eq!(t.ladder_len, 2);
        let u = circuit_unitary(&t.circuit).unwrap();
        let expect = embed_two_level(&hadamard(), 0b010, 0b101, 3).unwrap();
        assert!(u.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn adjacent_strings_need_no_ladder() {
        let t = build_two_level_circuit(b("00"), b("01"), &hadamard()).unwrap();
        assert_eq!(t.ladder_len, 0);
        assert_eq!(t.u_gates, 0..t.circuit.gate_count());
        let x = elementary_matrix(ElementaryKind::X, 0.0);
        let t = build_two_level_circuit(b("10"), b("11"), &x).unwrap();
        assert_eq!(t.circuit.gate_count(), 1);
    }

    #[test]
    fn rotation_matches_near_trivial_oracle() {
        for (x, y) in [("0110", "1011"), ("1111", "0000"), ("0001", "0010"), ("1000", "0111")] {
            for theta in [0.3, 2.0, -1.1] {
                let r = elementary_matrix(ElementaryKind::R, theta);
                let t = build_two_level_circuit(b(x), b(y), &r).unwrap();
                let u = circuit_unitary(&t.circuit).unwrap();
                let spec = NearTrivialSpec::rotation(b(x).value(), b(y).value(), theta);
                assert!(
                    u.max_abs_diff(&near_trivial_matrix(&spec, 4).unwrap()) < 1e-12,
                    "{x} {y} {theta}"
                );
            }
        }
    }

    #[test]
    fn generic_phases_are_exact() {
        let u = SquareMatrix::from_2x2(
            Complex64::new(0.6, 0.0) * Complex64::cis(0.4),
            Complex64::new(-0.8, 0.0) * Complex64::cis(2.1),
            Complex64::new(0.8, 0.0) * Complex64::cis(-0.3),
            Complex64::new(0.6, 0.0) * Complex64::cis(1.4),
        );
        assert!(u.is_unitary(1e-12));
        for (x, y) in [("0", "1"), ("1", "0"), ("101", "010"), ("011", "010")] {
            let t = build_two_level_circuit(b(x), b(y), &u).unwrap();
            let got = circuit_unitary(&t.circuit).unwrap();
            let expect = embed_two_level(&u, b(x).value(), b(y).value(), x.len()).unwrap();
            assert!(got.max_abs_diff(&expect) < 1e-12, "{x} {y}");
        }
    }

    #[test]
    fn rejects_equal_strings() {
        assert!(build_two_level_circuit(b("01"), b("01"), &hadamard()).is_err());
        assert!(build_two_level_circuit(b("01"), b("10"), &SquareMatrix::zeros(2)).is_err());
    }
}
