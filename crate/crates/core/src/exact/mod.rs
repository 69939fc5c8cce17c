//! Exact scalars, parameter polynomials and dense linear algebra over exact fields.

pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod signature;

pub use matrix::{kernel_intersection, Echelon, Matrix};
pub use poly::ParamPoly;
pub use scalar::{parse_rational, Field, GaussScalar, Rational};
pub use signature::{gauss_symmetric_signature, hermitian_signature, symmetric_signature, Inertia};
