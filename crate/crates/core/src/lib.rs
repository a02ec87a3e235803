pub mod alcove;
pub mod arith;
pub mod cache;
pub mod cmin;
pub mod complexes;
pub mod config;
pub mod error;
pub mod ideals;
pub mod sl2;
pub mod sampling;
pub mod standard;
pub mod suites;
pub mod workbench;

pub use error::{Error, Result};
pub use workbench::Workbench;
