//! The complexified bigraded exterior algebra of a model and the operators on it.

mod algebra;
mod basis;
mod form;
mod geometry;
mod operator;
pub mod real;

pub use algebra::BigradedAlgebra;
pub use basis::{bidegree, monomial_name, parse_monomial, Basis, Bidegree};
pub use form::Form;
pub use geometry::{Component, Geometry, NijenhuisFit, RelationCheck};
pub use operator::{BlockOperator, Difference, GMatrix};
