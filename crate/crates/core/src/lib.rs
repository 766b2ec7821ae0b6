//! Exact arithmetic for generalized matrix algebras built from Morita contexts.

pub mod algebra;
pub mod cli;
pub mod center;
pub mod decompose;
pub mod error;
pub mod format;
pub mod polymap;
pub mod ring;
pub mod rng;
pub mod suite;

pub use error::{Error, Result};
