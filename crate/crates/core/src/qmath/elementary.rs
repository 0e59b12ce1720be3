use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::SquareMatrix;
use crate::{Error, Result};

/// The 2×2 building blocks of every construction in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementaryKind {
    /// Real rotation `[[cos θ, −sin θ], [sin θ, cos θ]]`.
    R,
    /// Phase `diag(1, e^{iθ})`.
    P,
    /// `exp(−iθY/2)`.
    Ry,
    /// `exp(−iθZ/2)`.
    Rz,
    /// Pauli X; the angle is ignored.
    X,
}

impl FromStr for ElementaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(Self::R),
            "p" => Ok(Self::P),
            "ry" => Ok(Self::Ry),
            "rz" => Ok(Self::Rz),
            "x" => Ok(Self::X),
            _ => Err(Error::invalid(format!("unknown elementary matrix kind {s:?}"))),
        }
    }
}

impl fmt::Display for ElementaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::R => "R",
            Self::P => "P",
            Self::Ry => "Ry",
            Self::Rz => "Rz",
            Self::X => "X",
        })
    }
}

pub fn elementary_matrix(kind: ElementaryKind, angle: f64) -> SquareMatrix {
    let re = |x: f64| Complex64::new(x, 0.0);
    let zero = re(0.0);
    match kind {
        ElementaryKind::R => {
            let (s, c) = angle.sin_cos();
            SquareMatrix::from_2x2(re(c), re(-s), re(s), re(c))
        }
        ElementaryKind::P => SquareMatrix::from_2x2(re(1.0), zero, zero, Complex64::cis(angle)),
        ElementaryKind::Ry => {
            let (s, c) = (angle / 2.0).sin_cos();
            SquareMatrix::from_2x2(re(c), re(-s), re(s), re(c))
        }
        ElementaryKind::Rz => {
            SquareMatrix::from_2x2(Complex64::cis(-angle / 2.0), zero, zero, Complex64::cis(angle / 2.0))
        }
        ElementaryKind::X => SquareMatrix::from_2x2(zero, re(1.0), re(1.0), zero),
    }
}
