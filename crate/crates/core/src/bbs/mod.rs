//! The periodic two-dimensional box-ball system.
//!
//! A state is an `N × M` grid of ball counts `W[n][m]` (cyclic in both
//! indices) together with the carrier level `A`. The carrier grid `Q` is a
//! function of the state and is recomputed whenever needed.

mod dynamics;
mod sample;
mod solve;
mod state;

pub use dynamics::{evolve, find_period, shift_m, shift_n, trajectory};
pub use sample::random_state;
pub use solve::{
    inverse_lax_min_plus, solve_q, sweep_row, transfer_leading_terms, QGrid, QSolution, EQUAL_LEVEL_PREFACTOR,
};
pub use state::{conserved, BbsState, Conserved};
