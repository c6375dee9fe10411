//! Modules over finite K-categories: Hom, tensor products, resolutions, Ext and Tor.

mod module;
mod resolution;

pub use module::{
    boxtimes, boxtimes_right, column_module, dualize, hom_into_vector_space, module_hom, outer_tensor, outer_tensor_over, pullback, random_module,
    regular_bimodule, regular_bimodule_over, representable, row_module, simple, tensor_over_cat, CatModule, ModuleMap, Side,
    TensorProduct,
};
pub use resolution::{
    big_ext_functor, big_tor_functor, cover, ext, ext_from_resolution, free_module, hom_complex, is_projective,
    projective_resolution, representable_quotient, tensor_complex, tor, tor_from_resolution, Resolution,
    DEFAULT_MAX_DEG,
};
