//! Finite-field arithmetic and canonical subspace linear algebra.

mod enumerate;
mod field;
mod gf2;
mod map;
mod random;
mod subspace;

pub use enumerate::Subspaces;
pub use field::{Field, FieldElem, FieldSpec, MAX_Q, MODULI};
pub use map::LinearMap;
pub use random::{
    random_invertible, random_invertible_with, random_subspace, random_subspace_with,
    rng_from_seed,
};
pub use subspace::{unit_vector, Subspace};
