//! Statevector execution.
//!
//! Two engines share one gate semantics: a dense engine over all `2ⁿ`
//! amplitudes and a sparse engine that stores only non-zero amplitudes. The
//! sparse engine is what makes basis-state experiments on 20+ qubit
//! near-trivial circuits cheap, since those circuits keep only a handful of
//! amplitudes alive.

mod effective;
mod sparse;
pub mod text;

pub use effective::{circuit_unitary, effective_data_operator, EffectiveOperator, MAX_UNITARY_WIDTH};
pub use sparse::{run_sparse, SparseState};

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::{Error, Result};

/// Widest register a dense statevector may have.
pub const MAX_DENSE_WIDTH: usize = 26;

pub const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Accepts `2ⁿ` finite amplitudes with unit norm.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::invalid(format!("{len} amplitudes is not a power of two")));
        }
        let n = len.trailing_zeros() as usize;
        check_width(n)?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::invalid("non-finite amplitude"));
        }
        let s = StateVector { n, amps };
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!("state norm {norm} is not 1")));
        }
        Ok(s)
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_width(n)?;
        if index >> n != 0 {
            return Err(Error::invalid(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::invalid(format!("width mismatch: {} vs {}", self.n, other.n)));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    pub(crate) fn from_parts_unchecked(n: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        StateVector { n, amps }
    }
}

fn check_width(n: usize) -> Result<()> {
    if n > MAX_DENSE_WIDTH {
        return Err(Error::Capacity {
            what: "statevector width",
            requested: n,
            limit: MAX_DENSE_WIDTH,
        });
    }
    Ok(())
}

/// Bit mask of `qubit` in a `width`-qubit index, qubit 0 being the MSB.
pub(crate) fn qubit_mask(width: usize, qubit: usize) -> usize {
    1 << (width - 1 - qubit)
}

/// Masks `(care, want)` such that a basis index `i` satisfies every control
/// iff `i & care == want`.
pub(crate) fn control_masks(width: usize, gate: &Gate) -> (usize, usize) {
    let mut care = 0;
    let mut want = 0;
    for c in &gate.controls {
        let m = qubit_mask(width, c.qubit);
        care |= m;
        if c.polarity {
            want |= m;
        }
    }
    (care, want)
}

/// The 2×2 action of a gate kind on an amplitude pair `(a0, a1)`.
#[derive(Debug, Clone, Copy)]
pub(crate) enum PairAction {
    Swap,
    Matrix([Complex64; 4]),
}

impl PairAction {
    pub(crate) fn of(kind: &GateKind) -> PairAction {
        match kind {
            GateKind::X => PairAction::Swap,
            _ => {
                let m = kind.matrix();
                PairAction::Matrix([m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]])
            }
        }
    }

    #[inline]
    pub(crate) fn apply(&self, a0: Complex64, a1: Complex64) -> (Complex64, Complex64) {
        match self {
            PairAction::Swap => (a1, a0),
            PairAction::Matrix(m) => (m[0] * a0 + m[1] * a1, m[2] * a0 + m[3] * a1),
        }
    }
}

fn check_gate(width: usize, gate: &Gate) -> Result<()> {
    let mut seen = Vec::with_capacity(gate.controls.len() + 1);
    for q in gate.qubits() {
        if q >= width {
            return Err(Error::invalid(format!("qubit {q} out of range for width {width}")));
        }
        if seen.contains(&q) {
            return Err(Error::invalid(format!("qubit {q} used twice in one gate")));
        }
        seen.push(q);
    }
    Ok(())
}

pub fn apply_gate(state: &mut StateVector, gate: &Gate) -> Result<()> {
    check_gate(state.n, gate)?;
    apply_gate_unchecked(state.n, &mut state.amps, gate);
    Ok(())
}

fn apply_gate_unchecked(width: usize, amps: &mut [Complex64], gate: &Gate) {
    let t = qubit_mask(width, gate.target);
    let (care, want) = control_masks(width, gate);
    let action = PairAction::of(&gate.kind);
    for i in 0..amps.len() {
        if i & t != 0 || i & care != want {
            continue;
        }
        let (a0, a1) = action.apply(amps[i], amps[i | t]);
        amps[i] = a0;
        amps[i | t] = a1;
    }
}

/// Runs `circuit` on `state`, including the circuit's global phase.
pub fn run(circuit: &Circuit, state: &StateVector) -> Result<StateVector> {
    if circuit.width() != state.n {
        return Err(Error::invalid(format!(
            "circuit width {} does not match state width {}",
            circuit.width(),
            state.n
        )));
    }
    let mut amps = state.amps.clone();
    for g in circuit.gates() {
        apply_gate_unchecked(state.n, &mut amps, g);
    }
    if circuit.global_phase() != 0.0 {
        let p = Complex64::cis(circuit.global_phase());
        amps.iter_mut().for_each(|a| *a *= p);
    }
    Ok(StateVector { n: state.n, amps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Angle, Axis, ControlSpec};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &StateVector, b: &[Complex64], tol: f64) -> bool {
        a.amplitudes().iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn single_gate_examples() {
        let mut s = StateVector::basis(1, 0).unwrap();
        apply_gate(&mut s, &Gate::x(0)).unwrap();
        assert_eq!(s, StateVector::basis(1, 1).unwrap());

        let mut s = StateVector::basis(2, 0b10).unwrap();
        apply_gate(&mut s, &Gate::x(1).controlled_by(ControlSpec::on(0))).unwrap();
        assert_eq!(s, StateVector::basis(2, 0b11).unwrap());

        let mut s = StateVector::basis(1, 0).unwrap();
        apply_gate(&mut s, &Gate::rotation(Axis::Y, Angle::new(PI / 2.0).unwrap(), 0)).unwrap();
        assert!(close(&s, &[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)], 1e-15));
    }

    #[test]
    fn anti_control_and_big_endian() {
        // qubit 0 is the leftmost bit: |01⟩ is index 1
        let mut s = StateVector::basis(2, 0b01).unwrap();
        apply_gate(&mut s, &Gate::x(0).controlled_by(ControlSpec::on(1))).unwrap();
        assert_eq!(s, StateVector::basis(2, 0b11).unwrap());
        apply_gate(&mut s, &Gate::x(1).controlled_by(ControlSpec::off(0))).unwrap();
        assert_eq!(s, StateVector::basis(2, 0b11).unwrap());
    }

    #[test]
    fn run_examples() {
        let s = StateVector::basis(2, 2).unwrap();
        assert_eq!(run(&Circuit::new(2), &s).unwrap(), s);
        let xx = Circuit::from_gates(2, [Gate::x(0), Gate::x(0)]).unwrap();
        assert_eq!(run(&xx, &s).unwrap(), s);
        assert!(run(&Circuit::new(3), &s).is_err());
        assert!(apply_gate(&mut s.clone(), &Gate::x(2)).is_err());
    }

    #[test]
    fn global_phase_is_applied() {
        let mut c1 = Circuit::new(1);
        c1.add_global_phase(PI / 2.0).unwrap();
        let out = run(&c1, &StateVector::basis(1, 0).unwrap()).unwrap();
        assert!(close(&out, &[c(0.0, 1.0), c(0.0, 0.0)], 1e-15));
    }

    #[test]
    fn constructor_validation() {
        assert!(StateVector::new(vec![c(1.0, 0.0); 3]).is_err());
        assert!(StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(StateVector::new(vec![c(f64::NAN, 0.0), c(0.0, 0.0)]).is_err());
        assert!(StateVector::basis(2, 4).is_err());
        assert!(matches!(StateVector::basis(27, 0), Err(Error::Capacity { .. })));
    }
}
