//! Exact symbolic kernel for affine sl(4) and sl(5) computations at level -5/2.

pub mod affine;
pub mod c2;
pub mod data;
pub mod enveloping;
pub mod error;
pub mod harness;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod singular;
pub mod tensor;
pub mod text;
pub mod walg;
pub mod weyl;
pub mod zhu;

pub use error::{Error, Result};
pub use scalar::{MultiPoly, Poly, RatFunc, Rational, RationalFunc, Scalar};
