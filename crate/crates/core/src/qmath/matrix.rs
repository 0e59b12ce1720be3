use std::fmt;
use std::ops::{Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance on `‖M†M − I‖_max` for a matrix to count as unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// Dense `d×d` complex matrix stored row-major; `m[(j, k)]` is row `j`,
/// column `k`.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl SquareMatrix {
    /// Builds a matrix from row-major entries. All entries must be finite.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("matrix dimension must be at least 1"));
        }
        if data.len() != dim * dim {
            return Err(Error::invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        Ok(SquareMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid(
                "matrix rows must all have length equal to the row count",
            ));
        }
        Self::new(dim, rows.concat())
    }

    /// 2×2 matrix from its four entries.
    pub fn from_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        SquareMatrix {
            dim: 2,
            data: vec![a, b, c, d],
        }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be at least 1");
        SquareMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("diagonal must be non-empty"));
        }
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim).map(|j| self[(j, k)]).collect()
    }

    pub fn set_column(&mut self, k: usize, col: &[Complex64]) {
        assert_eq!(col.len(), self.dim);
        for (j, &z) in col.iter().enumerate() {
            self[(j, k)] = z;
        }
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for j in 0..d {
            for k in 0..d {
                out[(k, j)] = self[(j, k)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for j in 0..d {
            for k in 0..d {
                out[(k, j)] = self[(j, k)];
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        SquareMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &SquareMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖M†M − I‖_max`.
    pub fn unitarity_error(&self) -> f64 {
        let p = &self.adjoint() * self;
        p.max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    pub(crate) fn require_unitary(&self, tol: f64) -> Result<()> {
        let err = self.unitarity_error();
        if err <= tol {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "matrix is not unitary: ‖M†M − I‖_max = {err:.3e} > {tol:.1e}"
            )))
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|j| {
                self.data[j * self.dim..(j + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = Complex64;

    fn index(&self, (j, k): (usize, usize)) -> &Complex64 {
        assert!(j < self.dim && k < self.dim, "index ({j}, {k}) out of range");
        &self.data[j * self.dim + k]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Complex64 {
        assert!(j < self.dim && k < self.dim, "index ({j}, {k}) out of range");
        &mut self.data[j * self.dim + k]
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;

    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = SquareMatrix::zeros(d);
        for j in 0..d {
            for l in 0..d {
                let a = self.data[j * d + l];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..d {
                    out.data[j * d + k] += a * rhs.data[l * d + k];
                }
            }
        }
        out
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;

    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        SquareMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix({}x{}) [", self.dim, self.dim)?;
        for j in 0..self.dim {
            write!(f, "  ")?;
            for k in 0..self.dim {
                let z = self[(j, k)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SquareMatrix::new(0, vec![]).is_err());
        assert!(SquareMatrix::new(2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(SquareMatrix::new(1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(SquareMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![]]).is_err());
    }

    #[test]
    fn product_and_adjoint() {
        // [[1, i], [0, 2]] * [[0, 1], [1, 0]] = [[i, 1], [2, 0]]
        let a = SquareMatrix::from_2x2(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(2.0, 0.0));
        let x = SquareMatrix::from_2x2(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let p = &a * &x;
        assert_eq!(p[(0, 0)], c(0.0, 1.0));
        assert_eq!(p[(1, 0)], c(2.0, 0.0));
        assert_eq!(a.adjoint()[(1, 0)], c(0.0, -1.0));
        assert_eq!(a.trace(), c(3.0, 0.0));
        assert!(x.is_unitary(1e-15));
        assert!(!a.is_unitary(1e-3));
    }
}
