use std::fmt;

use super::{check_width, encode_angle, rotation_block, AngleEncoding, Sign};
use crate::circuit::{Axis, Circuit, RegisterLayout};
use crate::qmath::{zyz_decompose, SquareMatrix};
use crate::Result;

/// Registers for the single-qubit circuit: `e1` drives the first `R_z`, `e2`
/// the `R_y`, `e3` the last `R_z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingleQubitEncoding {
    pub e1: AngleEncoding,
    pub e2: AngleEncoding,
    pub e3: AngleEncoding,
}

impl SingleQubitEncoding {
    pub fn assignment(&self) -> [(&'static str, usize); 3] {
        [
            ("e1", self.e1.value()),
            ("e2", self.e2.value()),
            ("e3", self.e3.value()),
        ]
    }
}

impl fmt::Display for SingleQubitEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.e1, self.e2, self.e3)
    }
}

/// Layout `d`, `e1`, `e2`, `e3` with `m` qubits per register.
pub fn single_qubit_layout(m: usize) -> Result<RegisterLayout> {
    RegisterLayout::new(&[("d", 1), ("e1", m), ("e2", m), ("e3", m)], "d")
}

/// `R_z(0.e1·2π)`, then `R_y(0.e2·2π)`, then `R_z(0.e3·2π)` on qubit 0.
pub fn build_single_qubit_universal(m: usize) -> Result<Circuit> {
    check_width(m)?;
    let e = |k: usize| -> Vec<usize> { (1 + k * m..1 + (k + 1) * m).collect() };
    let mut gates = rotation_block(Axis::Z, Sign::Plus, 0, &e(0));
    gates.extend(rotation_block(Axis::Y, Sign::Plus, 0, &e(1)));
    gates.extend(rotation_block(Axis::Z, Sign::Plus, 0, &e(2)));
    Circuit::from_gates(1 + 3 * m, gates)
}

/// Encodes `δ`, `γ`, `β` of `U = e^{iα} R_z(β) R_y(γ) R_z(δ)`; `α` is dropped.
pub fn encode_single_qubit(u: &SquareMatrix, m: usize) -> Result<SingleQubitEncoding> {
    check_width(m)?;
    let a = zyz_decompose(u)?;
    Ok(SingleQubitEncoding {
        e1: encode_angle(a.delta, m)?,
        e2: encode_angle(a.gamma, m)?,
        e3: encode_angle(a.beta, m)?,
    })
}
