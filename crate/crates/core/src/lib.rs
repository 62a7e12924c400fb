pub mod algebra;
pub mod arith;
pub mod burnside;
pub mod catalog;
pub mod character;
pub mod error;
pub mod group;
pub mod linalg;
pub mod repcat;

pub use error::{Error, Result};
