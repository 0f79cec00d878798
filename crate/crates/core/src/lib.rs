//! Eilenberg-Zilber categories, cellular presheaves over them, and the
//! diagonal of bipresheaves.

pub mod bipresheaf;
pub mod category;
pub mod corpus;
pub mod diagonal;
pub mod error;
pub mod homotopy;
pub mod presheaf;
pub mod text;
pub mod verify;

pub use category::{Category, CategoryInstance, Morphism, Object};
pub use error::{Error, Result};
pub use presheaf::{CellComplex, ComplexMap, Element};
pub use homotopy::{HomologySummary, Matrix, Scalar};

/// Homology with arbitrary-precision coefficients.
pub type Homology = HomologySummary<num_bigint::BigInt>;
/// Homology with machine integers, for small complexes.
pub type Homology64 = HomologySummary<i64>;
pub type IntMatrix = Matrix<num_bigint::BigInt>;
pub type Matrix64 = Matrix<i64>;
