//! Inertia of symmetric and Hermitian forms by exact congruence diagonalization.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::AlgebraError;

use super::matrix::Matrix;
use super::scalar::{GaussScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.plus + self.minus + self.zero
    }

    pub fn is_positive_definite(&self) -> bool {
        self.minus == 0 && self.zero == 0
    }
}

/// Counts positive, negative and zero eigenvalues of a real symmetric matrix.
///
/// Symmetric row/column operations only; when every remaining diagonal entry
/// vanishes, a nonzero off-diagonal `a_ij` is folded in with `r_i += r_j`,
/// `c_i += c_j`, producing the diagonal entry `2 a_ij`.
pub fn symmetric_signature(s: &Matrix<Rational>) -> Result<Inertia, AlgebraError> {
    let n = s.rows();
    if s.cols() != n {
        return Err(AlgebraError::NotSquare { rows: n, cols: s.cols() });
    }
    for r in 0..n {
        for c in r + 1..n {
            if s[(r, c)] != s[(c, r)] {
                return Err(AlgebraError::NotSymmetric { row: r, col: c });
            }
        }
    }
    let mut a = s.clone();
    let mut inertia = Inertia { plus: 0, minus: 0, zero: 0 };
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_sym(&mut a, k, j);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero())
            {
                add_sym(&mut a, i, j);
                swap_sym(&mut a, k, i);
            } else {
                inertia.zero += n - k;
                break;
            }
        }
        let piv = a[(k, k)].clone();
        if piv.is_positive() {
            inertia.plus += 1;
        } else {
            inertia.minus += 1;
        }
        for j in k + 1..n {
            let f = &a[(j, k)] / &piv;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = &a[(j, c)] - &f * &a[(k, c)];
                a[(j, c)] = v;
            }
            for r in k..n {
                let v = &a[(r, j)] - &f * &a[(r, k)];
                a[(r, j)] = v;
            }
        }
    }
    Ok(inertia)
}

fn swap_sym(a: &mut Matrix<Rational>, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

fn add_sym(a: &mut Matrix<Rational>, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let v = &a[(i, c)] + &a[(j, c)];
        a[(i, c)] = v;
    }
    for r in 0..n {
        let v = &a[(r, i)] + &a[(r, j)];
        a[(r, i)] = v;
    }
}

/// Signature of a Gaussian matrix whose entries are all real.
pub fn gauss_symmetric_signature(s: &Matrix<GaussScalar>) -> Result<Inertia, AlgebraError> {
    let mut out = Matrix::zeros(s.rows(), s.cols());
    for r in 0..s.rows() {
        for c in 0..s.cols() {
            let x = &s[(r, c)];
            if !x.is_real() {
                return Err(AlgebraError::NotReal { row: r, col: c });
            }
            out[(r, c)] = x.re.clone();
        }
    }
    symmetric_signature(&out)
}

/// Signature of a Hermitian matrix `A + iB`, read off the real symmetric
/// matrix `[[A, -B], [B, A]]`, which has every eigenvalue doubled.
pub fn hermitian_signature(h: &Matrix<GaussScalar>) -> Result<Inertia, AlgebraError> {
    let n = h.rows();
    if h.cols() != n {
        return Err(AlgebraError::NotSquare { rows: n, cols: h.cols() });
    }
    let real = Matrix::from_fn(2 * n, 2 * n, |r, c| {
        let x = &h[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) | (false, false) => x.re.clone(),
            (true, false) => -&x.im,
            (false, true) => x.im.clone(),
        }
    });
    let d = symmetric_signature(&real).map_err(|e| match e {
        AlgebraError::NotSymmetric { row, col } => {
            AlgebraError::NotHermitian { row: row % n, col: col % n }
        }
        other => other,
    })?;
    Ok(Inertia { plus: d.plus / 2, minus: d.minus / 2, zero: d.zero / 2 })
}
