//! Binary-fraction angle encodings and the fixed-gate circuits driven by them.
//!
//! An `m`-bit register `r₁…r_m` stands for the angle `0.r₁…r_m · 2π`. Every
//! circuit here uses only X gates (with controls) and uncontrolled rotations
//! by `±π/2ʲ`; the register selects the rotation actually performed.

mod single_qubit;

pub use single_qubit::{build_single_qubit_universal, encode_single_qubit, single_qubit_layout, SingleQubitEncoding};

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use crate::bits::BitString;
use crate::circuit::{Angle, Axis, Circuit, ControlSpec, Gate, RegisterLayout};
use crate::qmath::reduce_angle;
use crate::{Error, Result};

/// Widest encoding; beyond this `2π·2⁻ᵐ` is below double resolution.
pub const MAX_ENCODING_BITS: usize = 52;

/// An `m`-bit binary fraction of a full turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AngleEncoding {
    bits: BitString,
}

impl AngleEncoding {
    pub fn new(bits: BitString) -> Result<Self> {
        check_width(bits.len())?;
        Ok(AngleEncoding { bits })
    }

    pub fn from_value(value: usize, m: usize) -> Result<Self> {
        check_width(m)?;
        Ok(AngleEncoding {
            bits: BitString::new(value, m)?,
        })
    }

    pub fn bits(&self) -> BitString {
        self.bits
    }

    /// The register's basis value, `r₁` being the most significant bit.
    pub fn value(&self) -> usize {
        self.bits.value()
    }

    pub fn m(&self) -> usize {
        self.bits.len()
    }

    /// `0.r · 2π`, in `[0, 2π)`.
    pub fn decode(&self) -> f64 {
        self.decode_scaled(TAU)
    }

    /// `0.r · eta`.
    pub fn decode_scaled(&self, eta: f64) -> f64 {
        self.value() as f64 / (1u64 << self.m()) as f64 * eta
    }
}

impl fmt::Display for AngleEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

impl FromStr for AngleEncoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

fn check_width(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("encoding width must be at least 1"));
    }
    if m > MAX_ENCODING_BITS {
        return Err(Error::Capacity {
            what: "encoding width",
            requested: m,
            limit: MAX_ENCODING_BITS,
        });
    }
    Ok(())
}

/// Nearest `m`-bit fraction of `theta / 2π`, rounding halves up and wrapping
/// `2ᵐ` to zero.
pub fn encode_angle(theta: f64, m: usize) -> Result<AngleEncoding> {
    check_width(m)?;
    if !theta.is_finite() {
        return Err(Error::invalid("angle must be finite"));
    }
    let scale = (1u64 << m) as f64;
    let r = (reduce_angle(theta) / TAU * scale + 0.5).floor() as u64 % (1u64 << m);
    AngleEncoding::from_value(r as usize, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::invalid(format!("unknown sign {s:?}"))),
        }
    }
}

/// Gates rotating `target` by `±0.r · 2π` about `axis`, where `r` is read
/// from the qubits `r` (most significant first).
///
/// Bit `j` contributes `Rot(s·π/2ʲ) · X_{r_j} · Rot(−s·π/2ʲ) · X_{r_j}`, which
/// is the identity when `r_j = 0` and `Rot(s·2π/2ʲ)` when `r_j = 1`.
pub(crate) fn rotation_block(axis: Axis, sign: Sign, target: usize, r: &[usize]) -> Vec<Gate> {
    let neg = sign.is_negative();
    let mut gates = Vec::with_capacity(4 * r.len());
    for (i, &q) in r.iter().enumerate() {
        let j = i as u32 + 1;
        let half = Angle::dyadic(neg, j).expect("exponent within range");
        gates.push(Gate::rotation(axis, half, target));
        gates.push(Gate::x(target).controlled_by(ControlSpec::on(q)));
        gates.push(Gate::rotation(axis, half.negated(), target));
        gates.push(Gate::x(target).controlled_by(ControlSpec::on(q)));
    }
    gates
}

/// Layout `d` (1 qubit) followed by `r` (`m` qubits).
pub fn rotation_encoder_layout(m: usize) -> Result<RegisterLayout> {
    RegisterLayout::new(&[("d", 1), ("r", m)], "d")
}

/// The universal rotation circuit: qubit 0 is the data qubit and qubits
/// `1..=m` hold `r`; it applies `R_axis(±0.r · 2π)` to the data qubit.
pub fn build_rotation_encoder(axis: Axis, sign: Sign, m: usize) -> Result<Circuit> {
    check_width(m)?;
    let r: Vec<usize> = (1..=m).collect();
    Circuit::from_gates(1 + m, rotation_block(axis, sign, 0, &r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// `C^1_0(R(0.r·2π))`: rotate the target when the control is `|0⟩`.
    Cr,
    /// `C(P(0.r·4π))` up to the global phase `e^{−i·0.r·π}`.
    Cp,
}

impl FromStr for BlockKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cr" => Ok(BlockKind::Cr),
            "cp" => Ok(BlockKind::Cp),
            _ => Err(Error::invalid(format!("unknown block kind {s:?}"))),
        }
    }
}

/// Layout `b` (control, target) followed by `r`.
pub fn controlled_block_layout(m: usize) -> Result<RegisterLayout> {
    RegisterLayout::new(&[("b", 2), ("r", m)], "b")
}

pub(crate) fn controlled_block_gates(kind: BlockKind, control: usize, target: usize, r: &[usize]) -> Vec<Gate> {
    let mut gates = Vec::new();
    match kind {
        BlockKind::Cr => {
            let flip = Gate::x(target).controlled_by(ControlSpec::off(control));
            gates.extend(rotation_block(Axis::Y, Sign::Plus, target, r));
            gates.push(flip.clone());
            gates.extend(rotation_block(Axis::Y, Sign::Minus, target, r));
            gates.push(flip);
        }
        BlockKind::Cp => {
            let flip = Gate::x(target).controlled_by(ControlSpec::on(control));
            gates.extend(rotation_block(Axis::Z, Sign::Plus, control, r));
            gates.extend(rotation_block(Axis::Z, Sign::Plus, target, r));
            gates.push(flip.clone());
            gates.extend(rotation_block(Axis::Z, Sign::Minus, target, r));
            gates.push(flip);
        }
    }
    gates
}

/// Controlled block on width `2 + m`: qubit 0 is the control, qubit 1 the
/// target, qubits `2..` hold `r`.
pub fn build_controlled_block(kind: BlockKind, m: usize) -> Result<Circuit> {
    check_width(m)?;
    let r: Vec<usize> = (2..2 + m).collect();
    Circuit::from_gates(2 + m, controlled_block_gates(kind, 0, 1, &r))
}
