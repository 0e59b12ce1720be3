//! Universal quantum circuits for near-trivial transformations.
//!
//! The crate is organised bottom-up:
//!
//! * [`qmath`]: dense complex matrices, elementary gate matrices, exact
//!   near-trivial oracles, ZYZ decomposition and operator distances.
//! * [`circuit`]: the gate-list intermediate representation, register layouts
//!   and the circuit text format.
//! * [`sim`]: statevector execution, effective-operator extraction and full
//!   unitary extraction.
//! * [`encoders`]: binary-fraction angle encodings and the fixed-gate rotation
//!   circuits built on them.
//! * [`neartrivial`]: the `C_a`, `C_b`, `C_U` constructions and their encoded
//!   programs.
//! * [`decompose`]: Gray-code two-level synthesis, near-trivial factorization
//!   and the unitary-to-program compiler.

pub mod bits;
pub mod circuit;
pub mod decompose;
pub mod encoders;
mod error;
pub mod neartrivial;
pub mod qmath;
pub mod random;
pub mod sim;

pub use bits::BitString;
pub use error::{Error, Result};
pub use num_complex::Complex64;
