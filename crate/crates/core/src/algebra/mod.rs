//! Finite fields, square matrices and canonical subspaces.

pub mod field;
pub mod mat;
pub mod subspace;
pub mod universe;

pub use field::{field_make, Field, FieldSpec, SUPPORTED_ORDERS};
pub use mat::{gl_order, Mat};
pub use subspace::{enumerate_subspaces, gaussian_binomial, span, subspace_count, Subspace, DEFAULT_ENUM_CAP};
pub use universe::Universe;
