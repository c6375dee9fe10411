//! Exact homological algebra over finite K-linear categories.

mod error;
pub mod exactla;
pub mod hochschild;
pub mod ideals;
pub mod kcat;
pub mod modcat;
pub mod theorems;

pub use error::{Error, Result};
pub use exactla::{FieldSpec, Mat, Scalar};
pub use ideals::TwoSidedIdeal;
pub use kcat::{Bimodule, FiniteKCategory, KFunctor};
pub use modcat::{CatModule, ModuleMap, Side};
