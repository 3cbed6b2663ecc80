//! Finite-dimensional commutative algebras, their modules, free resolutions and Ext.
//!
//! Everything is a finite linear solve: `Hom_A(A^s, g) = g^s` by generator images, and
//! resolutions are built greedily from echelon bases so that they are deterministic.

mod ext;
mod module;
mod resolution;
mod ring;

pub use ext::{
    comparison_map, ext_dim_with, ext_group, ext_pullback_matrix, ext_pushforward_matrix,
    lift_cocycle, yoneda_product, ExtClass, ExtGroup,
};
pub use module::{
    free_map_matrix, generator_images, hom_space, AModule, ModuleMap, ModuleRepr, ModuleSes,
};
pub use resolution::{pullback_matrix, FreeResolution};
pub use ring::{AlgebraRepr, FinDimAlgebra};
