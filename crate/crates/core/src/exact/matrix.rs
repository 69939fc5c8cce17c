//! Dense exact matrices with reduced-row-echelon kernels, ranks and solves.
//!
//! Elimination always picks the leftmost pivot column and the topmost
//! nonzero row within it. Since the reduced row echelon form is unique,
//! kernel bases are reproducible bit-for-bit.

use std::fmt;

use crate::error::AlgebraError;

use super::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone)]
pub struct Echelon<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(F::conj).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks matrices vertically. All inputs must share the column count.
    pub fn vstack(parts: &[&Matrix<F>]) -> Result<Self, AlgebraError> {
        let cols = parts.first().map(|m| m.cols).unwrap_or(0);
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            if m.cols != cols {
                return Err(AlgebraError::ColumnMismatch { expected: cols, found: m.cols });
            }
            rows += m.rows;
            data.extend(m.data.iter().cloned());
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn hstack(parts: &[&Matrix<F>]) -> Result<Self, AlgebraError> {
        let t: Vec<Matrix<F>> = parts.iter().map(|m| m.transpose()).collect();
        let refs: Vec<&Matrix<F>> = t.iter().collect();
        Ok(Self::vstack(&refs)
            .map_err(|e| match e {
                AlgebraError::ColumnMismatch { expected, found } => {
                    AlgebraError::RowMismatch { expected, found }
                }
                other => other,
            })?
            .transpose())
    }

    /// Reduced row echelon form with leftmost-pivot, topmost-row tie-breaking.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(src) = (prow..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(prow, src);
            let inv = m[(prow, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m[(prow, c)].clone();
                if !v.is_zero() {
                    m[(prow, c)] = v * inv.clone();
                }
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let f = m[(r, col)].clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let p = m[(prow, c)].clone();
                    if !p.is_zero() {
                        let v = m[(r, c)].clone() - f.clone() * p;
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right nullspace, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(r, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = b`; `Ok(None)` when `b` lies outside the column span.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>, AlgebraError> {
        if b.len() != self.rows {
            return Err(AlgebraError::RowMismatch { expected: self.rows, found: b.len() });
        }
        let column = Matrix::from_columns(self.rows, &[b.to_vec()]);
        let aug = Matrix::hstack(&[self, &column])?;
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::hstack(&[self, &Matrix::identity(n)]).ok()?;
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| reduced[(r, n + c)].clone()))
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return F::zero();
            };
            if src != col {
                m.swap_rows(col, src);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = det * piv.clone();
            let inv = piv.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = m[(r, col)].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m[(r, c)].clone() - f.clone() * m[(col, c)].clone();
                    m[(r, c)] = v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let v = out[(r, c)].clone() + a.clone() * b.clone();
                        out[(r, c)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        self.add(&other.scale(&-F::one()))
    }
}

/// Basis of the common kernel of matrices sharing a column count.
pub fn kernel_intersection<F: Field>(ms: &[&Matrix<F>]) -> Result<Vec<Vec<F>>, AlgebraError> {
    let Some(first) = ms.first() else {
        return Err(AlgebraError::Empty);
    };
    if ms.len() == 1 {
        return Ok(first.kernel());
    }
    Ok(Matrix::vstack(ms)?.kernel())
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{GaussScalar, Rational};
    use num_traits::{One, Zero};

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn zero_matrix_kernel_is_identity_columns() {
        let z = Matrix::<Rational>::zeros(3, 3);
        let k = z.kernel();
        assert_eq!(k.len(), 3);
        for (j, v) in k.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), r == j);
            }
        }
    }

    #[test]
    fn gaussian_kernel_example() {
        let m = Matrix::from_rows(
            2,
            vec![vec![GaussScalar::one(), GaussScalar::i()], vec![GaussScalar::zero(), GaussScalar::zero()]],
        );
        assert_eq!(m.kernel(), vec![vec![-GaussScalar::i(), GaussScalar::one()]]);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let id = Matrix::<Rational>::identity(3);
        let b = vec![q(1), q(-2), q(5)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));
        let m = Matrix::from_rows(1, vec![vec![q(1)], vec![q(0)]]);
        assert_eq!(m.solve(&[q(0), q(1)]).unwrap(), None);
        assert!(m.solve(&[q(0)]).is_err());
    }

    #[test]
    fn intersection_cases() {
        let id = Matrix::<Rational>::identity(2);
        assert!(kernel_intersection(&[&id]).unwrap().is_empty());
        let m = Matrix::from_rows(3, vec![vec![q(1), q(1), q(0)]]);
        assert_eq!(kernel_intersection(&[&m, &m]).unwrap(), m.kernel());
        let n = Matrix::<Rational>::zeros(1, 2);
        assert!(kernel_intersection(&[&m, &n]).is_err());
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_rows(2, vec![vec![q(2), q(1)], vec![q(1), q(1)]]);
        assert_eq!(m.determinant(), q(1));
        assert_eq!(m.mul(&m.inverse().unwrap()), Matrix::identity(2));
        let s = Matrix::from_rows(2, vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(s.inverse().is_none());
        assert!(s.determinant().is_zero());
    }
}
