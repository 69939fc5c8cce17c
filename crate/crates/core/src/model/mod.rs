//! Lie-algebra models: structure constants, an almost complex structure and an
//! orthonormal frame.

mod catalog;
mod io;
mod structure;

pub use catalog::{catalog, catalog_names};
pub use io::{load_model_str, model_to_json};
pub use structure::{validate, Nijenhuis, StructureReport};

use num_traits::Zero;

use crate::error::ModelError;
use crate::exact::{Matrix, Rational};

/// Real Lie algebra of dimension `2m` with structure constants in a frame
/// `X_1..X_{2m}` declared orthonormal, and a rational endomorphism `J`.
///
/// `J` acts on frame coordinates: `J X_c = Σ_r j[(r, c)] X_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieModel {
    name: String,
    dim: usize,
    // c[(i * dim + j) * dim + k] = coefficient of X_k in [X_i, X_j]
    structure: Vec<Rational>,
    j: Matrix<Rational>,
    holomorphic_frame: Option<Vec<usize>>,
}

/// One structure constant: `[X_i, X_j]` has `X_k`-component `c` (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Rational,
}

impl LieModel {
    /// Builds a model from `[X_i, X_j] = Σ c X_k` entries (0-based indices).
    ///
    /// Listing `[X_j, X_i]` as well is allowed when it is consistent.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        brackets: &[Bracket],
        j: Matrix<Rational>,
    ) -> Result<Self, ModelError> {
        if dim == 0 || dim % 2 != 0 {
            return Err(ModelError::OddDimension(dim));
        }
        if dim > 12 {
            return Err(ModelError::TooLarge(dim));
        }
        if j.rows() != dim || j.cols() != dim {
            return Err(ModelError::BadJShape { dim, rows: j.rows(), lens: vec![j.cols(); j.rows()] });
        }
        let mut structure = vec![Rational::zero(); dim * dim * dim];
        let mut set = vec![false; dim * dim * dim];
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for (entry, b) in brackets.iter().enumerate() {
            for index in [b.i, b.j, b.k] {
                if index >= dim {
                    return Err(ModelError::IndexOutOfRange { entry, index: index + 1, dim });
                }
            }
            if b.i == b.j {
                if b.c.is_zero() {
                    continue;
                }
                return Err(ModelError::SelfBracket { entry, i: b.i + 1 });
            }
            let (a, r) = (idx(b.i, b.j, b.k), idx(b.j, b.i, b.k));
            if set[a] && structure[a] != b.c {
                return Err(ModelError::Antisymmetry { i: b.i + 1, j: b.j + 1, k: b.k + 1 });
            }
            structure[a] = b.c.clone();
            structure[r] = -b.c.clone();
            set[a] = true;
            set[r] = true;
        }
        Ok(LieModel { name: name.into(), dim, structure, j, holomorphic_frame: None })
    }

    /// Fixes which frame vectors `X_g` generate the holomorphic frame
    /// `X_g - iJX_g` (1-based, in coframe order).
    pub fn with_holomorphic_frame(mut self, frame: Vec<usize>) -> Self {
        self.holomorphic_frame = Some(frame);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn j(&self) -> &Matrix<Rational> {
        &self.j
    }

    pub fn holomorphic_frame(&self) -> Option<&[usize]> {
        self.holomorphic_frame.as_deref()
    }

    /// Coefficient of `X_k` in `[X_i, X_j]` (0-based).
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero structure constants with `i < j`, ordered by `(i, j, k)`.
    pub fn brackets(&self) -> Vec<Bracket> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out.push(Bracket { i, j, k, c: c.clone() });
                    }
                }
            }
        }
        out
    }

    /// Bracket of two vectors given in frame coordinates.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in (0..n).filter(|&i| !u[i].is_zero()) {
            for j in (0..n).filter(|&j| !v[j].is_zero()) {
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &uv * c;
                    }
                }
            }
        }
        out
    }

    pub fn apply_j(&self, v: &[Rational]) -> Vec<Rational> {
        self.j.mul_vec(v)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = num_traits::One::one();
        v
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(Zero::is_zero)
    }
}
