//! Gate-list intermediate representation.
//!
//! Gates are X, R_y or R_z on one target with any number of polarity-annotated
//! controls. Qubit 0 is the most significant bit of a basis index.

mod angle;
mod census;
mod layout;
pub mod text;

pub use angle::{Angle, MAX_DYADIC_EXPONENT};
pub use census::{gate_set_report, GateCensus, GateDescriptor};
pub use layout::{Block, RegisterLayout};

use std::fmt;

use crate::qmath::{elementary_matrix, ElementaryKind, SquareMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// A control qubit; the gate fires when the qubit equals `polarity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ControlSpec {
    pub qubit: usize,
    pub polarity: bool,
}

impl ControlSpec {
    pub fn new(qubit: usize, polarity: bool) -> Self {
        ControlSpec { qubit, polarity }
    }

    /// Fires on `|1⟩`.
    pub fn on(qubit: usize) -> Self {
        Self::new(qubit, true)
    }

    /// Fires on `|0⟩`.
    pub fn off(qubit: usize) -> Self {
        Self::new(qubit, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X,
    Ry(Angle),
    Rz(Angle),
}

impl GateKind {
    pub fn rotation(axis: Axis, angle: Angle) -> Self {
        match axis {
            Axis::Y => GateKind::Ry(angle),
            Axis::Z => GateKind::Rz(angle),
        }
    }

    pub fn matrix(&self) -> SquareMatrix {
        match self {
            GateKind::X => elementary_matrix(ElementaryKind::X, 0.0),
            GateKind::Ry(a) => elementary_matrix(ElementaryKind::Ry, a.radians()),
            GateKind::Rz(a) => elementary_matrix(ElementaryKind::Rz, a.radians()),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GateKind::X => GateKind::X,
            GateKind::Ry(a) => GateKind::Ry(a.negated()),
            GateKind::Rz(a) => GateKind::Rz(a.negated()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<ControlSpec>,
}

impl Gate {
    pub fn new(kind: GateKind, target: usize) -> Self {
        Gate {
            kind,
            target,
            controls: Vec::new(),
        }
    }

    pub fn x(target: usize) -> Self {
        Self::new(GateKind::X, target)
    }

    pub fn rotation(axis: Axis, angle: Angle, target: usize) -> Self {
        Self::new(GateKind::rotation(axis, angle), target)
    }

    pub fn controlled_by(mut self, control: ControlSpec) -> Self {
        self.controls.push(control);
        self
    }

    pub fn with_controls(mut self, controls: impl IntoIterator<Item = ControlSpec>) -> Self {
        self.controls.extend(controls);
        self
    }

    pub fn inverse(&self) -> Self {
        Gate {
            kind: self.kind.inverse(),
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    /// Every qubit the gate touches, target first.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.target).chain(self.controls.iter().map(|c| c.qubit))
    }

    fn validate(&self, width: usize) -> Result<()> {
        let qubits: Vec<usize> = self.qubits().collect();
        if let Some(&q) = qubits.iter().find(|&&q| q >= width) {
            return Err(Error::invalid(format!("qubit {q} out of range for width {width}")));
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::invalid(format!("qubit {q} used twice in one gate")));
            }
        }
        Ok(())
    }

    fn remapped(&self, map: &[usize]) -> Gate {
        Gate {
            kind: self.kind,
            target: map[self.target],
            controls: self
                .controls
                .iter()
                .map(|c| ControlSpec::new(map[c.qubit], c.polarity))
                .collect(),
        }
    }
}

/// An ordered gate list over `width` qubits plus a global phase `e^{iφ}`.
///
/// Every gate is validated against the width on insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    global_phase: f64,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Circuit {
            width,
            gates: Vec::new(),
            global_phase: 0.0,
        }
    }

    pub fn from_gates(width: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Self::new(width);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn add_global_phase(&mut self, phase: f64) -> Result<()> {
        if !phase.is_finite() {
            return Err(Error::invalid("global phase must be finite"));
        }
        self.global_phase += phase;
        Ok(())
    }

    /// Appends `other` with its qubit `i` wired to `map[i]` of `self`.
    pub fn append_mapped(&mut self, other: &Circuit, map: &[usize]) -> Result<()> {
        if map.len() != other.width {
            return Err(Error::invalid(format!(
                "qubit map has {} entries for a circuit of width {}",
                map.len(),
                other.width
            )));
        }
        let mut gates = Vec::with_capacity(other.gates.len());
        for g in &other.gates {
            let g = g.remapped(map);
            g.validate(self.width)?;
            gates.push(g);
        }
        self.gates.extend(gates);
        self.global_phase += other.global_phase;
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.width != self.width {
            return Err(Error::invalid(format!(
                "width mismatch: {} vs {}",
                self.width, other.width
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        self.global_phase += other.global_phase;
        Ok(())
    }

    /// Copy of `self` on the first `self.width()` qubits of a wider register.
    pub fn widened(&self, width: usize) -> Result<Circuit> {
        if width < self.width {
            return Err(Error::invalid(format!("cannot narrow width {} to {width}", self.width)));
        }
        Ok(Circuit {
            width,
            gates: self.gates.clone(),
            global_phase: self.global_phase,
        })
    }

    /// Mirror image: gates reversed and individually inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            global_phase: -self.global_phase,
        }
    }

    /// Equivalent circuit in which every control fires on `|1⟩`; each
    /// anti-control is conjugated by X on its qubit.
    pub fn with_positive_controls(&self) -> Circuit {
        let mut out = Circuit {
            width: self.width,
            gates: Vec::with_capacity(self.gates.len()),
            global_phase: self.global_phase,
        };
        for g in &self.gates {
            let flips: Vec<usize> = g.controls.iter().filter(|c| !c.polarity).map(|c| c.qubit).collect();
            out.gates.extend(flips.iter().map(|&q| Gate::x(q)));
            out.gates.push(Gate {
                kind: g.kind,
                target: g.target,
                controls: g.controls.iter().map(|c| ControlSpec::on(c.qubit)).collect(),
            });
            out.gates.extend(flips.iter().map(|&q| Gate::x(q)));
        }
        out
    }
}

/// `a` followed by `b`.
pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    let mut out = a.clone();
    out.append(b)?;
    Ok(out)
}

pub fn inverse(c: &Circuit) -> Circuit {
    c.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ry(a: f64, t: usize) -> Gate {
        Gate::rotation(Axis::Y, Angle::new(a).unwrap(), t)
    }

    #[test]
    fn push_validates_indices() {
        let mut c = Circuit::new(2);
        assert!(c.push(Gate::x(2)).is_err());
        assert!(c.push(Gate::x(0).controlled_by(ControlSpec::on(0))).is_err());
        assert!(c
            .push(Gate::x(0).with_controls([ControlSpec::on(1), ControlSpec::off(1)]))
            .is_err());
        assert!(c.push(Gate::x(0).controlled_by(ControlSpec::off(1))).is_ok());
        assert_eq!(c.gate_count(), 1);
    }

    #[test]
    fn compose_with_empty_and_counts() {
        let c = Circuit::from_gates(2, [Gate::x(0), ry(0.3, 1)]).unwrap();
        assert_eq!(compose(&Circuit::new(2), &c).unwrap(), c);
        assert_eq!(compose(&c, &c).unwrap().gate_count(), 4);
        assert!(compose(&c, &Circuit::new(3)).is_err());
    }

    #[test]
    fn inverse_examples() {
        let c = Circuit::from_gates(1, [Gate::x(0)]).unwrap();
        assert_eq!(inverse(&c), c);
        let c = Circuit::from_gates(2, [ry(PI / 4.0, 0), Gate::x(1)]).unwrap();
        let expect = Circuit::from_gates(2, [Gate::x(1), ry(-PI / 4.0, 0)]).unwrap();
        assert_eq!(inverse(&c), expect);
        assert_eq!(inverse(&inverse(&c)), c);
    }

    #[test]
    fn mapped_append_rewires_qubits() {
        let inner = Circuit::from_gates(2, [Gate::x(1).controlled_by(ControlSpec::off(0))]).unwrap();
        let mut outer = Circuit::new(4);
        outer.append_mapped(&inner, &[3, 1]).unwrap();
        assert_eq!(outer.gates()[0].target, 1);
        assert_eq!(outer.gates()[0].controls, vec![ControlSpec::off(3)]);
        assert!(outer.append_mapped(&inner, &[0]).is_err());
        assert!(outer.append_mapped(&inner, &[0, 4]).is_err());
    }

    #[test]
    fn positive_controls_conjugate_with_x() {
        let c = Circuit::from_gates(3, [Gate::x(2).with_controls([ControlSpec::off(0), ControlSpec::on(1)])]).unwrap();
        let p = c.with_positive_controls();
        assert_eq!(p.gate_count(), 3);
        assert!(p.gates().iter().all(|g| g.controls.iter().all(|c| c.polarity)));
    }
}
