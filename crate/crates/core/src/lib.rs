//! Exact bigraded calculus on Lie-algebra models of almost Hermitian
//! manifolds: the components of the differential, adjoints and Laplacians,
//! the almost Kähler identities, harmonic diamonds and obstructions.
//!
//! All arithmetic is exact over ℚ or ℚ(i).

pub mod error;
pub mod exact;
pub mod exterior;
pub mod forms;
pub mod harmonic;
pub mod model;
pub mod operators;

pub use error::{AlgebraError, GeometryError, ModelError, ParseScalarError};
pub use exact::{GaussScalar, Rational};
pub use forms::{BlockOperator, Form, Geometry};
pub use model::LieModel;

/// Dense matrix over the Gaussian rationals.
pub type GMatrix = exact::Matrix<GaussScalar>;
/// Dense matrix over the rationals.
pub type QMatrix = exact::Matrix<Rational>;
