//! Finite additively idempotent semirings: operation tables, word-semiring
//! constructions, identity checking, and the Kneser hypergraph machinery used
//! to separate small nilpotent semirings by identities.

pub mod acceptance;
pub mod algebra;
pub mod builtin;
pub mod config;
pub mod error;
pub mod experiments;
pub mod hypergraph;
pub mod iso;
pub mod recheck;
pub mod terms;
pub mod word_semirings;

pub use algebra::FiniteSemiring;
pub use error::{Error, Result};
