//! Lax matrices, the exact characteristic polynomial over the formal
//! parameter `q`, and its tropicalization.

mod formal;
mod lax;
mod tropical;

pub use formal::{FormalPoly, Monomial};
pub use lax::{
    build_lax, char_poly_exact, char_poly_of, determinant, lax_matrix, monodromy, scaled_exponents, Bidegree, LaxEntry,
    Matrix,
};
pub use tropical::{minplus_estimate, newton_check, tropicalize, tropicalize_scaled, NewtonReport, SpectralData};
