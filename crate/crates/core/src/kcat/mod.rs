//! Finite K-linear categories and the standard constructions on them.

mod bimodule;
mod category;
mod constructions;
pub mod quiver;
mod quotient;
mod random;

pub use bimodule::Bimodule;
pub use category::{
    term, validate, CategoryBuilder, CategoryParts, Construction, FiniteKCategory, LinComb, TriangularBlocks,
    UnitSide, ValidationReport, Violation,
};
pub use constructions::{
    a2, a3, drop_zero_objects, dual_numbers, enveloping, full_subcategory, kronecker, one_point_extension, opposite,
    point, product_kk, tensor_category, triangular_matrix,
};
pub(crate) use quotient::quotient_data;
pub use quotient::{quotient, KFunctor};
pub use random::random_category;
