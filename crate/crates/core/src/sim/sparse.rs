use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{check_gate, control_masks, qubit_mask, PairAction, StateVector, MAX_DENSE_WIDTH};
use crate::bits::MAX_BITS;
use crate::circuit::Circuit;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A state stored as its non-zero amplitudes, keyed by basis index.
///
/// Gate arithmetic is identical to the dense engine, so both produce the same
/// floating-point amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    n: usize,
    amps: BTreeMap<usize, Complex64>,
}

impl SparseState {
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        Self::from_entries(n, [(index, Complex64::new(1.0, 0.0))])
    }

    /// Builds a state from `(index, amplitude)` pairs; repeated indices add up.
    /// The norm is not checked.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, Complex64)>) -> Result<Self> {
        if n > MAX_BITS {
            return Err(Error::Capacity {
                what: "sparse state width",
                requested: n,
                limit: MAX_BITS,
            });
        }
        let mut amps = BTreeMap::new();
        for (i, a) in entries {
            if i >> n != 0 {
                return Err(Error::invalid(format!("basis index {i} out of range for {n} qubits")));
            }
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::invalid("non-finite amplitude"));
            }
            *amps.entry(i).or_insert(ZERO) += a;
        }
        amps.retain(|_, a| *a != ZERO);
        Ok(SparseState { n, amps })
    }

    pub fn from_dense(s: &StateVector) -> Self {
        SparseState {
            n: s.qubit_count(),
            amps: s
                .amplitudes()
                .iter()
                .enumerate()
                .filter(|(_, a)| **a != ZERO)
                .map(|(i, a)| (i, *a))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Result<StateVector> {
        if self.n > MAX_DENSE_WIDTH {
            return Err(Error::Capacity {
                what: "statevector width",
                requested: self.n,
                limit: MAX_DENSE_WIDTH,
            });
        }
        let mut amps = vec![ZERO; 1 << self.n];
        for (&i, &a) in &self.amps {
            amps[i] = a;
        }
        Ok(StateVector::from_parts_unchecked(self.n, amps))
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, index: usize) -> Complex64 {
        self.amps.get(&index).copied().unwrap_or(ZERO)
    }

    /// Non-zero amplitudes in increasing index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.amps.iter().map(|(&i, &a)| (i, a))
    }

    pub fn support_size(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn apply_unchecked(&mut self, gate: &crate::circuit::Gate) {
        let t = qubit_mask(self.n, gate.target);
        let (care, want) = control_masks(self.n, gate);
        let action = PairAction::of(&gate.kind);
        let mut out = BTreeMap::new();
        let mut pairs = BTreeMap::new();
        for (&i, &a) in &self.amps {
            if i & care != want {
                out.insert(i, a);
            } else {
                let slot = pairs.entry(i & !t).or_insert([ZERO, ZERO]);
                slot[usize::from(i & t != 0)] = a;
            }
        }
        for (base, [a0, a1]) in pairs {
            let (b0, b1) = action.apply(a0, a1);
            if b0 != ZERO {
                out.insert(base, b0);
            }
            if b1 != ZERO {
                out.insert(base | t, b1);
            }
        }
        self.amps = out;
    }
}

/// Sparse counterpart of [`super::run`].
pub fn run_sparse(circuit: &Circuit, state: &SparseState) -> Result<SparseState> {
    if circuit.width() != state.n {
        return Err(Error::invalid(format!(
            "circuit width {} does not match state width {}",
            circuit.width(),
            state.n
        )));
    }
    let mut s = state.clone();
    for g in circuit.gates() {
        check_gate(s.n, g)?;
        s.apply_unchecked(g);
    }
    if circuit.global_phase() != 0.0 {
        let p = Complex64::cis(circuit.global_phase());
        s.amps.values_mut().for_each(|a| *a *= p);
    }
    Ok(s)
}
