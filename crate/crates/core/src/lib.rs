pub mod davis;
pub mod enumeration;
pub mod error;
pub mod matrix;
pub mod presentation;
pub mod rigidity;
pub mod spherical;
pub mod system;
pub mod word;

pub use error::{Error, Result};
pub use matrix::{CoxeterMatrix, Generator, MatrixId, Order, ParabolicSubset};
pub use system::{CoxeterSystem, Limits};
pub use word::{GroupElement, Parity, Word};
