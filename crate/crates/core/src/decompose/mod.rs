//! Gray-code synthesis of two-level unitaries, factorisation of arbitrary
//! unitaries into near-trivial transformations, and the compiler that turns a
//! unitary into a list of programs for the universal circuit.

mod compile;
mod factor;
mod two_level;

pub use compile::{compile_unitary, CompiledUnitary};
pub use factor::{factor_unitary, reconstruct, NearTrivialSequence, DEFAULT_TOL, PRUNE_TOL};
pub use two_level::{build_two_level_circuit, TwoLevelCircuit};

use crate::bits::BitString;
use crate::{Error, Result};

/// Path from `x` to `y` flipping one differing bit per step, least
/// significant first. Has `Ham(x, y) + 1` entries.
pub fn gray_code(x: BitString, y: BitString) -> Result<Vec<BitString>> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "bit strings have different lengths: {} and {}",
            x.len(),
            y.len()
        )));
    }
    let mut out = vec![x];
    let mut cur = x;
    for pos in (0..x.len()).rev() {
        if cur.bit(pos) != y.bit(pos) {
            cur = cur.flipped(pos);
            out.push(cur);
        }
    }
    Ok(out)
}
