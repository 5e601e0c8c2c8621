//! Refuting long geodesic facet paths in matroid polytopes.
//!
//! The pipeline enumerates candidate path complexes (pivot sequences with
//! revisits), encodes "a uniform chirotope exists whose boundary contains
//! this path geodesically" as CNF, and asks a SAT solver to refute it.
//! Shortcuts are either enumerated up front (eager) or discovered from
//! candidate models and cut off one at a time (lazy).

pub mod bounds;
pub mod chirotope;
pub mod cli;
pub mod combinatorics;
pub mod encoder;
mod error;
pub mod pathcomplex;
pub mod prover;
pub mod shortcuts;

pub use error::{Error, Result};
