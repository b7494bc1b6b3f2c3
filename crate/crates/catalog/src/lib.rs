//! Reference constants for colored multiple zeta values of level four and an
//! integer-relation search expressing computed values over them.

mod constants;
mod relation;

pub use constants::{canonical_name, constant, constant_uncached, is_known, ENTRIES};
pub use relation::{find_relation, find_relation_with, Relation, RelationSearch, HEIGHT_CAP, REVERIFY_DIGITS};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown constant `{0}`")]
    Unknown(String),
    #[error("{digits} digits is too low for a basis of {basis} constants (need 10 per constant)")]
    Precision { digits: u32, basis: usize },
    #[error("basis constants are linearly dependent: {0:?}")]
    DependentBasis(Vec<String>),
    #[error("evaluation failed: {0}")]
    Eval(String),
}
