//! Canonical equivariant cohomology classes of Hamiltonian torus actions
//! presented as GKM graphs, computed in exact arithmetic.
//!
//! The pipeline runs from a [`gkmgraph::GkmGraph`] and a generic direction
//! through [`morse::MorseData`], edge integers Θ, the one-step canonical graph,
//! and path sums for every restriction `α_p(q)`. Independent checks live in
//! [`oracle`].

#![allow(clippy::needless_range_loop)]

pub mod canonical;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod gkmgraph;
pub mod morse;
pub mod oracle;
pub mod report;
pub mod spaces;

pub use error::{Error, Result};
