use std::fmt;

use super::factor::{factor_unitary, NearTrivialSequence, DEFAULT_TOL};
use crate::neartrivial::{encode_spec, EncodedProgram};
use crate::qmath::SquareMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct CompiledUnitary {
    pub n: usize,
    pub m: usize,
    pub factors: NearTrivialSequence,
    /// In application order: the first program acts first.
    pub programs: Vec<EncodedProgram>,
}

impl fmt::Display for CompiledUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# compiled d={} m={} factors={}",
            self.factors.dim,
            self.m,
            self.programs.len()
        )?;
        for p in &self.programs {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Factors a `2ⁿ × 2ⁿ` unitary and encodes every factor for `C_U′(n, m)`.
pub fn compile_unitary(u: &SquareMatrix, n: usize, m: usize) -> Result<CompiledUnitary> {
    let d = u.dim();
    if !d.is_power_of_two() || d.trailing_zeros() as usize != n {
        return Err(Error::invalid(format!("dimension {d} is not 2^{n}")));
    }
    let factors = factor_unitary(u, DEFAULT_TOL)?;
    let programs = factors
        .factors
        .iter()
        .rev()
        .map(|f| encode_spec(f, n, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(CompiledUnitary {
        n,
        m,
        factors,
        programs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neartrivial::{parse_programs, programs_operator};
    use crate::qmath::{distance_up_to_global_phase, near_trivial_matrix, NearTrivialSpec};
    use num_complex::Complex64;
    use std::f64::consts::TAU;

    #[test]
    fn identity_compiles_to_nothing() {
        let c = compile_unitary(&SquareMatrix::identity(4), 2, 6).unwrap();
        assert!(c.programs.is_empty());
        assert_eq!(c.to_string(), "# compiled d=4 m=6 factors=0\n");
    }

    #[test]
    fn near_trivial_input_gives_one_program() {
        let spec = NearTrivialSpec::rotation(1, 3, 0.9);
        let c = compile_unitary(&near_trivial_matrix(&spec, 2).unwrap(), 2, 8).unwrap();
        assert_eq!(c.programs.len(), 1);
        assert_eq!(c.programs[0], encode_spec(&spec, 2, 8).unwrap());
    }

    #[test]
    fn pauli_x_end_to_end() {
        let (o, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        let x = SquareMatrix::from_2x2(o, i, i, o);
        let m = 14;
        let c = compile_unitary(&x, 1, m).unwrap();
        assert!(!c.programs.is_empty());
        let text = c.to_string();
        assert_eq!(parse_programs(&text).unwrap(), c.programs);
        let got = programs_operator(1, m, &c.programs).unwrap();
        let bound = c.programs.len() as f64 * TAU / (1u64 << m) as f64;
        assert!(distance_up_to_global_phase(&x, &got).unwrap().distance <= bound);
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(compile_unitary(&SquareMatrix::identity(3), 1, 4).is_err());
        assert!(compile_unitary(&SquareMatrix::identity(4), 3, 4).is_err());
    }
}
