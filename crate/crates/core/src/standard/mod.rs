//! Standard, costandard, simple and tilting modules, Hom spaces and decompositions.

mod decompose;
mod filtration;
mod hom;
mod simple;
mod weyl;

pub use decompose::{
    has_local_endomorphisms, highest_weight_scalar, semisimple_quotient_dim, DecompositionResult, Summand,
    SummandLabel,
};
pub use filtration::{has_good_filtration, has_weyl_filtration, peel_standard_filtration, FiltrationSide};
pub use hom::{find_isomorphism, hom_dim, hom_space};
pub use simple::simple_module;
pub use weyl::{dual_weyl_module, weyl_module};
