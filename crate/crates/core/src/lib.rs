//! Exact computations with the tree-spanned operad of natural operations on
//! Hochschild cochains, the crossed interval group of symmetric groups, and
//! the chain complexes attached to them.

pub mod complexes;
pub mod error;
pub mod hochschild;
pub mod interval;
pub mod operad;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use interval::IntervalMorphism;
pub use perm::{GradeDecomposition, Perm};
