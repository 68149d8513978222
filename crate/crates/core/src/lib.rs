//! Binomial edge ideals of complete bipartite graphs `K_{m,n}`.
//!
//! [`closed_form`] evaluates the known invariants of `S/J_{K_{m,n}}` (Hilbert
//! series, Betti table, dimension, depth, multiplicity, deficiency modules);
//! [`oracle`] recomputes them from scratch by exact linear algebra so each
//! formula can be checked at small sizes; [`verify`] runs those comparisons.

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod exec;
pub mod graphs;
pub mod ideals;
pub mod oracle;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
