//! Circuit text format.
//!
//! ```text
//! qubits 3
//! X t=2 c=0:1,1:0
//! RY t=0 sign=- j=2
//! RZ t=1 angle=0.3 c=0:1
//! ```
//!
//! Dyadic rotations are written as `sign`/`j`, any other angle as `angle=`
//! using the shortest decimal that round-trips. A non-zero global phase is
//! written on a `phase <radians>` line after the header. `#` starts a comment.

use std::fmt::Write;

use super::{Angle, Circuit, ControlSpec, Gate, GateKind};
use crate::{Error, Result};

pub fn format_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", c.width()).unwrap();
    if c.global_phase() != 0.0 {
        writeln!(out, "phase {:?}", c.global_phase()).unwrap();
    }
    for g in c.gates() {
        out.push_str(&format_gate(g));
        out.push('\n');
    }
    out
}

pub fn format_gate(g: &Gate) -> String {
    let mut s = match g.kind {
        GateKind::X => format!("X t={}", g.target),
        GateKind::Ry(a) => format!("RY t={} {}", g.target, format_angle(a)),
        GateKind::Rz(a) => format!("RZ t={} {}", g.target, format_angle(a)),
    };
    if !g.controls.is_empty() {
        let cs: Vec<String> = g
            .controls
            .iter()
            .map(|c| format!("{}:{}", c.qubit, u8::from(c.polarity)))
            .collect();
        write!(s, " c={}", cs.join(",")).unwrap();
    }
    s
}

fn format_angle(a: Angle) -> String {
    match a {
        Angle::Dyadic { negative, exponent } => {
            format!("sign={} j={exponent}", if negative { '-' } else { '+' })
        }
        Angle::Generic(x) => format!("angle={x:?}"),
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap_or_default();
        let rest: Vec<&str> = tokens.collect();
        match (&mut circuit, head) {
            (None, "qubits") => {
                let width = single_value(&rest, line_no)?;
                let width = width
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("invalid qubit count {width:?}")))?;
                circuit = Some(Circuit::new(width));
            }
            (None, _) => return Err(Error::parse(line_no, "expected `qubits <N>` header")),
            (Some(_), "qubits") => return Err(Error::parse(line_no, "duplicate `qubits` header")),
            (Some(c), "phase") => {
                let v = single_value(&rest, line_no)?;
                let phase = parse_f64(v, line_no)?;
                c.add_global_phase(phase)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
            }
            (Some(c), _) => {
                let gate = parse_gate(head, &rest, line_no)?;
                c.push(gate).map_err(|e| Error::parse(line_no, e.to_string()))?;
            }
        }
    }
    circuit.ok_or_else(|| Error::parse(1, "missing `qubits <N>` header"))
}

fn single_value<'a>(rest: &[&'a str], line_no: usize) -> Result<&'a str> {
    match rest {
        [v] => Ok(v),
        _ => Err(Error::parse(line_no, "expected exactly one value")),
    }
}

fn parse_f64(s: &str, line_no: usize) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::parse(line_no, format!("invalid number {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::parse(line_no, format!("non-finite number {s:?}")));
    }
    Ok(v)
}

fn parse_usize(s: &str, what: &str, line_no: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line_no, format!("invalid {what} {s:?}")))
}

fn parse_gate(head: &str, fields: &[&str], line_no: usize) -> Result<Gate> {
    let mut target = None;
    let mut sign = None;
    let mut exponent = None;
    let mut angle = None;
    let mut controls = None;
    for field in fields {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::parse(line_no, format!("expected key=value, found {field:?}")))?;
        let slot_taken = match key {
            "t" => target.replace(parse_usize(value, "target", line_no)?).is_some(),
            "sign" => {
                let s = match value {
                    "+" => false,
                    "-" => true,
                    _ => return Err(Error::parse(line_no, format!("invalid sign {value:?}"))),
                };
                sign.replace(s).is_some()
            }
            "j" => exponent
                .replace(
                    value
                        .parse::<u32>()
                        .map_err(|_| Error::parse(line_no, format!("invalid exponent {value:?}")))?,
                )
                .is_some(),
            "angle" => angle.replace(parse_f64(value, line_no)?).is_some(),
            "c" => controls.replace(parse_controls(value, line_no)?).is_some(),
            _ => return Err(Error::parse(line_no, format!("unknown field {key:?}"))),
        };
        if slot_taken {
            return Err(Error::parse(line_no, format!("duplicate field {key:?}")));
        }
    }
    let target = target.ok_or_else(|| Error::parse(line_no, "missing target `t=`"))?;
    let rotation_angle = || -> Result<Angle> {
        match (sign, exponent, angle) {
            (Some(neg), Some(j), None) => Angle::dyadic(neg, j).map_err(|e| Error::parse(line_no, e.to_string())),
            (None, None, Some(a)) => Ok(Angle::new(a).expect("finite angle")),
            _ => Err(Error::parse(
                line_no,
                "rotation needs either `sign=` and `j=`, or `angle=`",
            )),
        }
    };
    let kind = match head {
        "X" => {
            if sign.is_some() || exponent.is_some() || angle.is_some() {
                return Err(Error::parse(line_no, "X takes no angle"));
            }
            GateKind::X
        }
        "RY" => GateKind::Ry(rotation_angle()?),
        "RZ" => GateKind::Rz(rotation_angle()?),
        _ => return Err(Error::parse(line_no, format!("unknown gate {head:?}"))),
    };
    Ok(Gate {
        kind,
        target,
        controls: controls.unwrap_or_default(),
    })
}

fn parse_controls(value: &str, line_no: usize) -> Result<Vec<ControlSpec>> {
    value
        .split(',')
        .map(|item| {
            let (q, p) = item
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, format!("invalid control {item:?}")))?;
            let qubit = parse_usize(q, "control qubit", line_no)?;
            let polarity = match p {
                "1" => true,
                "0" => false,
                _ => return Err(Error::parse(line_no, format!("invalid polarity {p:?}"))),
            };
            Ok(ControlSpec { qubit, polarity })
        })
        .collect()
}
