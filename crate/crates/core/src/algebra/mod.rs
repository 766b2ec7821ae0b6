//! Structure-constant algebras, bimodules, contexts and their assembled algebras.

pub mod builders;
mod context;
mod gma;
mod spec;
mod tensor;

pub use builders::MatrixLayout;
pub use context::MoritaContext;
pub use gma::{AssemblyError, Gma, BLOCK_NAMES};
pub use spec::{AlgebraSpec, BimoduleSpec, LawViolation};
pub use tensor::Tensor3;
