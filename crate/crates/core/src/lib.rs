//! Reversible asymmetric event structures and reversible asymmetric causal
//! nets: axioms, token game, configurations, morphisms, coproducts and the
//! translations between the two models.

pub mod acn;
pub mod bridge;
pub mod error;
pub mod es;
pub mod exec;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod morphism;
pub mod net;
pub mod random;
pub mod racn;
pub mod relation;
pub mod report;

pub use error::{Error, Result};
pub use exec::Exec;
pub use report::ValidationReport;
