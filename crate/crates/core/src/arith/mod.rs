//! Exact arithmetic over the rationals and cyclotomic fields.

pub mod cyclotomic;
pub mod rational;

pub use cyclotomic::Cyclotomic;
pub use rational::Rational;
