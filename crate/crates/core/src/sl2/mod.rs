//! Finite-dimensional type-one modules over U_ζ(sl₂) with divided powers.

mod module;
mod morphism;
mod ops;
mod relations;
mod sub;

pub use module::{Generator, ModuleJson, UModule};
pub use morphism::UMorphism;
pub use ops::{
    direct_sum, dual_index_map, dual_module, dual_morphism, frobenius_twist, tensor_module, tensor_morphism,
    DirectSum, TensorLayout,
};
pub use relations::{check_relations, RelationFailure, RelationReport};
pub use sub::{
    cokernel, factor_through_injection, generated_subspace, image, image_subspace, kernel, kernel_subspace,
    linear_lift, quotient_by_graded, quotient_module, submodule_from_graded, submodule_generated,
    weight_components, GradedSubspace,
};
