//! Matrix text format: a line with the dimension `d`, then `d` lines of `d`
//! whitespace-separated `re im` pairs.

use std::fmt::Write;

use num_complex::Complex64;

use super::SquareMatrix;
use crate::{Error, Result};

pub fn format_matrix(m: &SquareMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{}", m.dim()).unwrap();
    for j in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .map(|k| {
                let z = m[(j, k)];
                format!("{:.16e} {:.16e}", z.re, z.im)
            })
            .collect();
        writeln!(out, "{}", row.join("  ")).unwrap();
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<SquareMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, header) = lines.next().ok_or_else(|| Error::parse(1, "empty matrix file"))?;
    let dim: usize = header
        .parse()
        .map_err(|_| Error::parse(line_no, format!("expected dimension, found {header:?}")))?;
    if dim == 0 {
        return Err(Error::parse(line_no, "dimension must be at least 1"));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(line_no + row + 1, format!("missing row {row}")))?;
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::parse(line_no, format!("invalid number {t:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if nums.len() != 2 * dim {
            return Err(Error::parse(
                line_no,
                format!("expected {} numbers, found {}", 2 * dim, nums.len()),
            ));
        }
        data.extend(nums.chunks(2).map(|p| Complex64::new(p[0], p[1])));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(line_no, "unexpected trailing content"));
    }
    SquareMatrix::new(dim, data).map_err(|e| Error::parse(line_no, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let m = SquareMatrix::from_2x2(
            Complex64::new(0.1, -1.0 / 3.0),
            Complex64::new(1e-300, 2.5),
            Complex64::new(-0.0, std::f64::consts::PI),
            Complex64::new(7.0, 0.0),
        );
        let text = format_matrix(&m);
        assert!(text.starts_with("2\n"));
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2\n1 0 0 0\n").is_err());
        assert!(matches!(parse_matrix("1\n1 0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_matrix("1\n1 0\n1 0\n").is_err());
        assert!(parse_matrix("1\nnan 0\n").is_err());
    }
}
