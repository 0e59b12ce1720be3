use std::f64::consts::PI;
use std::fmt;

use crate::{Error, Result};

const MANTISSA_MASK: u64 = (1 << 52) - 1;
/// Largest `j` for which `π/2ʲ` is still a normal double.
pub const MAX_DYADIC_EXPONENT: u32 = 1022;

/// A rotation angle. Angles of the form `±π/2ʲ` are stored exactly as a sign
/// and exponent so that the fixed-gate check never compares floats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Dyadic { negative: bool, exponent: u32 },
    Generic(f64),
}

impl Angle {
    /// Classifies `radians`, detecting `±π/2ʲ` by exact bit comparison.
    pub fn new(radians: f64) -> Result<Angle> {
        if !radians.is_finite() {
            return Err(Error::invalid(format!("rotation angle must be finite, got {radians}")));
        }
        let abs = radians.abs();
        let pi_bits = PI.to_bits();
        let bits = abs.to_bits();
        if abs.is_normal() && bits & MANTISSA_MASK == pi_bits & MANTISSA_MASK && bits <= pi_bits {
            let exponent = ((pi_bits >> 52) - (bits >> 52)) as u32;
            return Ok(Angle::Dyadic {
                negative: radians < 0.0,
                exponent,
            });
        }
        Ok(Angle::Generic(radians))
    }

    /// `±π/2ʲ`.
    pub fn dyadic(negative: bool, exponent: u32) -> Result<Angle> {
        if exponent > MAX_DYADIC_EXPONENT {
            return Err(Error::invalid(format!(
                "dyadic exponent {exponent} exceeds {MAX_DYADIC_EXPONENT}"
            )));
        }
        Ok(Angle::Dyadic { negative, exponent })
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Angle::Dyadic { negative, exponent } => {
                let mag = f64::from_bits(PI.to_bits() - ((exponent as u64) << 52));
                if negative {
                    -mag
                } else {
                    mag
                }
            }
            Angle::Generic(a) => a,
        }
    }

    pub fn is_dyadic(&self) -> bool {
        matches!(self, Angle::Dyadic { .. })
    }

    pub fn negated(&self) -> Angle {
        match *self {
            Angle::Dyadic { negative, exponent } => Angle::Dyadic {
                negative: !negative,
                exponent,
            },
            Angle::Generic(a) => Angle::Generic(-a),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Dyadic { negative, exponent } => {
                write!(f, "{}pi/2^{exponent}", if negative { "-" } else { "" })
            }
            Angle::Generic(a) => write!(f, "{a:?}"),
        }
    }
}
