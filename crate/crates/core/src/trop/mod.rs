//! Min-plus arithmetic: scalars, square matrices and tropical polynomials.
//!
//! Addition is `min`, multiplication is ordinary addition, and `+∞` is the
//! additive identity. Everything is exact; there is no floating point here.

mod matrix;
mod poly;
mod scalar;

pub use matrix::{EigenResult, TropMatrix};
pub use poly::{TropPoly1, TropPoly2};
pub use scalar::Trop;
