use num_complex::Complex64;

use super::{run, run_sparse, SparseState, StateVector};
use crate::circuit::{Circuit, RegisterLayout};
use crate::qmath::SquareMatrix;
use crate::{Error, Result};

/// Widest circuit whose full unitary may be extracted.
pub const MAX_UNITARY_WIDTH: usize = 12;

/// Widest data register for [`effective_data_operator`].
const MAX_DATA_WIDTH: usize = 12;

#[derive(Debug, Clone)]
pub struct EffectiveOperator {
    pub matrix: SquareMatrix,
    /// Largest norm, over data basis inputs, of the output component whose
    /// ancillas differ from their inputs.
    pub leakage: f64,
}

/// The operator a circuit induces on its data block when every ancilla block
/// is prepared in the given basis value and projected back onto it.
///
/// `ancillas` must give a value for every non-data block of `layout`.
pub fn effective_data_operator(
    circuit: &Circuit,
    layout: &RegisterLayout,
    ancillas: &[(&str, usize)],
) -> Result<EffectiveOperator> {
    let width = layout.width();
    if width != circuit.width() {
        return Err(Error::invalid(format!(
            "layout width {width} does not match circuit width {}",
            circuit.width()
        )));
    }
    let mut base = 0usize;
    for block in layout.ancillas() {
        let len = block.qubits.len();
        let value = ancillas
            .iter()
            .find(|(name, _)| *name == block.name)
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::invalid(format!("no value given for block {:?}", block.name)))?;
        if len < usize::BITS as usize && value >> len != 0 {
            return Err(Error::invalid(format!(
                "value {value} does not fit block {:?} of width {len}",
                block.name
            )));
        }
        base |= value << (width - block.qubits.end);
    }
    if let Some((name, _)) = ancillas
        .iter()
        .find(|(name, _)| layout.ancillas().all(|b| b.name != *name))
    {
        return Err(Error::invalid(format!(
            "{name:?} is not an ancilla block of the layout"
        )));
    }

    let data = layout.data().qubits.clone();
    if data.len() > MAX_DATA_WIDTH {
        return Err(Error::Capacity {
            what: "data register width",
            requested: data.len(),
            limit: MAX_DATA_WIDTH,
        });
    }
    let shift = width - data.end;
    let data_mask = ((1usize << data.len()) - 1) << shift;
    let dim = 1usize << data.len();

    let mut matrix = SquareMatrix::zeros(dim);
    let mut leakage: f64 = 0.0;
    for col in 0..dim {
        let input = SparseState::basis(width, base | (col << shift))?;
        let out = run_sparse(circuit, &input)?;
        let mut leaked = 0.0;
        for (i, a) in out.entries() {
            if i & !data_mask == base {
                matrix[((i & data_mask) >> shift, col)] = a;
            } else {
                leaked += a.norm_sqr();
            }
        }
        leakage = leakage.max(leaked.sqrt());
    }
    Ok(EffectiveOperator { matrix, leakage })
}

/// Full unitary of a circuit: column `i` is the circuit applied to `|i⟩`.
pub fn circuit_unitary(circuit: &Circuit) -> Result<SquareMatrix> {
    let n = circuit.width();
    if n > MAX_UNITARY_WIDTH {
        return Err(Error::Capacity {
            what: "circuit width for unitary extraction",
            requested: n,
            limit: MAX_UNITARY_WIDTH,
        });
    }
    let dim = 1usize << n;
    let mut m = SquareMatrix::zeros(dim);
    for col in 0..dim {
        let out = run(circuit, &StateVector::basis(n, col)?)?;
        let column: Vec<Complex64> = out.into_amplitudes();
        m.set_column(col, &column);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Angle, Axis, ControlSpec, Gate};
    use crate::qmath::{elementary_matrix, ElementaryKind};

    #[test]
    fn identity_circuit() {
        let layout = RegisterLayout::new(&[("d", 2), ("a", 1)], "d").unwrap();
        let e = effective_data_operator(&Circuit::new(3), &layout, &[("a", 1)]).unwrap();
        assert_eq!(e.matrix, SquareMatrix::identity(4));
        assert_eq!(e.leakage, 0.0);
    }

    #[test]
    fn controlled_rotation_selected_by_ancilla() {
        let layout = RegisterLayout::new(&[("a", 1), ("d", 1)], "d").unwrap();
        let g = Gate::rotation(Axis::Y, Angle::new(0.9).unwrap(), 1).controlled_by(ControlSpec::on(0));
        let c = Circuit::from_gates(2, [g]).unwrap();
        let on = effective_data_operator(&c, &layout, &[("a", 1)]).unwrap();
        assert!(on.matrix.max_abs_diff(&elementary_matrix(ElementaryKind::Ry, 0.9)) < 1e-15);
        let off = effective_data_operator(&c, &layout, &[("a", 0)]).unwrap();
        assert_eq!(off.matrix, SquareMatrix::identity(2));
    }

    #[test]
    fn leakage_is_measured() {
        let layout = RegisterLayout::new(&[("d", 1), ("a", 1)], "d").unwrap();
        let c = Circuit::from_gates(2, [Gate::x(1).controlled_by(ControlSpec::on(0))]).unwrap();
        let e = effective_data_operator(&c, &layout, &[("a", 0)]).unwrap();
        assert_eq!(e.leakage, 1.0);
        assert_eq!(e.matrix[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(e.matrix[(1, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn assignment_errors() {
        let layout = RegisterLayout::new(&[("d", 1), ("a", 2)], "d").unwrap();
        let c = Circuit::new(3);
        assert!(effective_data_operator(&c, &layout, &[]).is_err());
        assert!(effective_data_operator(&c, &layout, &[("a", 4)]).is_err());
        assert!(effective_data_operator(&c, &layout, &[("a", 0), ("z", 0)]).is_err());
        assert!(effective_data_operator(&Circuit::new(2), &layout, &[("a", 0)]).is_err());
    }

    #[test]
    fn unitary_examples() {
        let x = circuit_unitary(&Circuit::from_gates(1, [Gate::x(0)]).unwrap()).unwrap();
        assert_eq!(x, elementary_matrix(ElementaryKind::X, 0.0));
        let cnot = Circuit::from_gates(2, [Gate::x(1).controlled_by(ControlSpec::on(0))]).unwrap();
        let u = circuit_unitary(&cnot).unwrap();
        let one = Complex64::new(1.0, 0.0);
        for (r, col) in [(0, 0), (1, 1), (3, 2), (2, 3)] {
            assert_eq!(u[(r, col)], one);
        }
        assert!(matches!(
            circuit_unitary(&Circuit::new(13)),
            Err(Error::Capacity { .. })
        ));
    }
}
