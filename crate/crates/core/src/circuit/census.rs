use std::collections::BTreeMap;

use super::{Axis, Circuit, GateKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateDescriptor {
    X { controls: usize },
    Rotation { axis: Axis, dyadic: bool, controls: usize },
}

/// Gate multiset of a circuit, keyed by descriptor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateCensus {
    pub counts: BTreeMap<GateDescriptor, usize>,
}

impl GateCensus {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn count(&self, d: GateDescriptor) -> usize {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// True iff the circuit uses only (multi-)controlled X and uncontrolled
    /// rotations by `±π/2ʲ`.
    pub fn passes_universal_set(&self) -> bool {
        self.counts.keys().all(|d| match *d {
            GateDescriptor::X { .. } => true,
            GateDescriptor::Rotation { dyadic, controls, .. } => dyadic && controls == 0,
        })
    }

    pub fn x_gates(&self) -> usize {
        self.counts
            .iter()
            .filter(|(d, _)| matches!(d, GateDescriptor::X { .. }))
            .map(|(_, n)| n)
            .sum()
    }

    pub fn rotations(&self) -> usize {
        self.total() - self.x_gates()
    }
}

pub fn gate_set_report(c: &Circuit) -> GateCensus {
    let mut census = GateCensus::default();
    for g in c.gates() {
        let controls = g.controls.len();
        let d = match g.kind {
            GateKind::X => GateDescriptor::X { controls },
            GateKind::Ry(a) => GateDescriptor::Rotation {
                axis: Axis::Y,
                dyadic: a.is_dyadic(),
                controls,
            },
            GateKind::Rz(a) => GateDescriptor::Rotation {
                axis: Axis::Z,
                dyadic: a.is_dyadic(),
                controls,
            },
        };
        *census.counts.entry(d).or_default() += 1;
    }
    census
}
