//! Cochain complexes of modules and complexes of tilting modules in block form.

mod block;
mod chain;
mod minimal;
mod tensor;

pub use block::{BlockComplex, BlockMap, ComplexJson, Part, TiltingComplex};
pub use chain::{tensor_complexes, total_complex, ChainComplex, DoubleComplex};
pub use minimal::{is_minimal, minimalize, HomotopyWitness};
pub use tensor::tensor_tilting_complexes;
