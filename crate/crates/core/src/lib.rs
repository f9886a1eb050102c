//! Generalized matrix functions `d^G_chi(A)` over permutation groups, the
//! Cholesky-based decomposition of their normalized values, and tools around
//! the permanent dominant conjecture.

pub mod characters;
pub mod cli;
pub mod conjecture;
pub mod decomposition;
pub mod error;
pub mod gmf;
pub mod io;
pub mod matrix;
pub mod numeric;
pub mod perm;
pub mod random;

pub use error::{Error, Result};
pub use num_complex::Complex64;
