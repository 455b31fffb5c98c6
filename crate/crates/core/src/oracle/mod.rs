//! Checks that do not go through the path formula: a linear solver for
//! canonical classes and a subword formula on complete flags.

mod billey;
mod solver;

pub use billey::billey_restrict;
pub use solver::{
    build_system, residuals, solve_canonical_linear, solve_system, Equation, InfeasibilityCertificate, LinearSystem,
    SolveOutcome,
};
pub use crate::spaces::Permutation;
