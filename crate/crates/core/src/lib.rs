//! Exact computations on Grassmann graphs `J_q(n,k)` over finite fields: the
//! five-class partition of a local graph induced by a second vertex, its
//! Euclidean representation, and spectral checks.

pub mod error;
pub mod euclid;
pub mod gflinalg;
pub mod grassmann;
pub mod orbits;
pub mod qalg;
pub mod spectra;

pub use error::{Error, Result};
