//! Exact scalar arithmetic, polynomials in ν and sparse linear algebra.

pub mod matrix;
pub mod poly;
pub mod scalar;

pub use matrix::{rank_and_kernel, rank_over_function_field, FunctionFieldRank, RowEchelon, SparseMatrix, SparseVec};
pub use poly::NuPoly;
pub use scalar::Scalar;
