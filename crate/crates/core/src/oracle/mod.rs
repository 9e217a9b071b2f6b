//! Independent numerical check: the discrete system at finite `ε`.

pub mod discrete;
pub mod lemma;
pub mod logspace;
pub mod ud;

pub use discrete::{discrete_row_sweep, discrete_solve, inverse_lax_positive, lift_state, DiscreteState, Lift};
pub use lemma::{
    check_solution, det_identities_check, det_with_scale, periodic_reduction, DetCheck, LemmaReport, PeriodicReduction,
};
pub use logspace::{ln_one_minus_exp, ln_one_plus_exp, log_mul, log_normalize, lse, lse2, LogMatrix};
pub use ud::{ud_estimate, ud_estimate_log, valuation_check, ValuationReport};

use crate::bbs::{BbsState, EQUAL_LEVEL_PREFACTOR};

/// `k₁` used when lifting `s`: 1 unless `A = B`, where the same prefactor as
/// the tie-breaking in `solve_q` keeps both sides on one discrete family.
pub fn default_prefactor(s: &BbsState) -> f64 {
    if s.level() == s.b() {
        EQUAL_LEVEL_PREFACTOR
    } else {
        1.0
    }
}
