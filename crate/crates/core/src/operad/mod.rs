//! The coloured operad B of natural operations on Hochschild cochains, as
//! canonical trees, and its totalization.

pub mod basis;
pub mod braces;
pub mod complex;
pub mod differential;
pub mod generators;
pub mod sum;
pub mod tree;

pub use basis::{enumerate_basis, enumerate_planar};
pub use differential::{differential, SignConvention};
pub use sum::TreeSum;
pub use tree::{canonicalize, NatTree, Node, TreeType};
