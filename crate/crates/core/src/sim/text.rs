//! State text format: a `qubits <n>` header followed by `<index> <re> <im>`
//! lines. Omitted indices are zero; `#` starts a comment.

use std::fmt::Write;

use num_complex::Complex64;

use super::{SparseState, StateVector};
use crate::{Error, Result};

/// Entries with magnitude at or below this are not written.
pub const EMIT_THRESHOLD: f64 = 1e-14;

pub fn format_state(s: &StateVector) -> String {
    let mut out = format!("qubits {}\n", s.qubit_count());
    for (i, a) in s.amplitudes().iter().enumerate() {
        if a.norm() > EMIT_THRESHOLD {
            writeln!(out, "{i} {:.17e} {:.17e}", a.re, a.im).unwrap();
        }
    }
    out
}

/// Parses a state and checks that it has unit norm.
pub fn parse_state(text: &str) -> Result<StateVector> {
    let mut n = None;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (n, fields.as_slice()) {
            (None, ["qubits", v]) => {
                let width: usize = v
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("invalid qubit count {v:?}")))?;
                if width > super::MAX_DENSE_WIDTH {
                    return Err(Error::parse(line_no, format!("{width} qubits is too wide")));
                }
                n = Some(width);
            }
            (None, _) => return Err(Error::parse(line_no, "expected `qubits <n>` header")),
            (Some(_), [idx, re, im]) => {
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("invalid index {idx:?}")))?;
                let num = |s: &str| -> Result<f64> {
                    s.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| Error::parse(line_no, format!("invalid number {s:?}")))
                };
                entries.push((line_no, idx, Complex64::new(num(re)?, num(im)?)));
            }
            (Some(_), _) => return Err(Error::parse(line_no, "expected `<index> <re> <im>`")),
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, "missing `qubits <n>` header"))?;
    let mut seen = std::collections::BTreeSet::new();
    for &(line_no, idx, _) in &entries {
        if idx >> n != 0 {
            return Err(Error::parse(
                line_no,
                format!("index {idx} out of range for {n} qubits"),
            ));
        }
        if !seen.insert(idx) {
            return Err(Error::parse(line_no, format!("index {idx} listed twice")));
        }
    }
    let sparse = SparseState::from_entries(n, entries.into_iter().map(|(_, i, a)| (i, a)))?;
    let dense = sparse.to_dense()?;
    StateVector::new(dense.into_amplitudes())
}
