use std::ops::Range;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub qubits: Range<usize>,
}

/// Named, contiguous, disjoint qubit blocks covering a circuit's width in
/// order. One block is designated as the data register; the others are
/// ancillas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    blocks: Vec<Block>,
    data: usize,
}

impl RegisterLayout {
    pub fn new(blocks: &[(&str, usize)], data: &str) -> Result<Self> {
        let mut out = Vec::with_capacity(blocks.len());
        let mut start = 0;
        for &(name, len) in blocks {
            if len == 0 {
                return Err(Error::invalid(format!("block {name:?} has zero width")));
            }
            if out.iter().any(|b: &Block| b.name == name) {
                return Err(Error::invalid(format!("duplicate block name {name:?}")));
            }
            out.push(Block {
                name: name.to_string(),
                qubits: start..start + len,
            });
            start += len;
        }
        let data = out
            .iter()
            .position(|b| b.name == data)
            .ok_or_else(|| Error::invalid(format!("no data block named {data:?}")))?;
        Ok(RegisterLayout { blocks: out, data })
    }

    /// `w, x, y` of width `n`, `b` of width 2 and, when `m > 0`, `r` of width
    /// `m`; `w` is the data register.
    pub fn near_trivial(n: usize, m: usize) -> Result<Self> {
        if m == 0 {
            Self::new(&[("w", n), ("x", n), ("y", n), ("b", 2)], "w")
        } else {
            Self::new(&[("w", n), ("x", n), ("y", n), ("b", 2), ("r", m)], "w")
        }
    }

    pub fn width(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.qubits.end)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Option<Range<usize>> {
        self.blocks.iter().find(|b| b.name == name).map(|b| b.qubits.clone())
    }

    pub fn data(&self) -> &Block {
        &self.blocks[self.data]
    }

    pub fn ancillas(&self) -> impl Iterator<Item = &Block> {
        self.blocks
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != self.data)
            .map(|(_, b)| b)
    }
}
