//! Scalar arithmetic: exact quadratic fields and floats behind one trait.

mod error;
mod int;
mod linalg;
mod quad;
mod scalar;

pub use error::NumericError;
pub use int::Int;
pub use linalg::{dot, Mat};
pub use quad::{Quad, Ring, Q2, Q3, Q5, Q6};
pub use scalar::{Field, Scalar, FLOAT_TOL, KEY_RESOLUTION};
