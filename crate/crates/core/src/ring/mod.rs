//! Exact scalars over ℚ and 𝔽_p and dense linear algebra on top of them.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use scalar::{axpy, format_vec, is_zero_vec, vec_add, vec_scale, vec_sub, Ring, Scalar, MAX_MODULUS};
pub use subspace::Subspace;
