//! Exact arithmetic layer: rationals, the cyclotomic field Q(ζ_ℓ), dense and sparse linear
//! algebra, quantum integers and formal characters.

mod character;
mod cyclotomic;
mod matrix;
mod quantum;
mod rational;
mod sparse;

pub use character::Character;
pub use cyclotomic::{euler_phi, CyclotomicScalar, FieldTables};
pub use matrix::{Echelon, ExactMatrix};
pub use quantum::{quantum_binomial, quantum_factorial, quantum_integer};
pub use rational::Rat;
pub use sparse::SparseSystem;
