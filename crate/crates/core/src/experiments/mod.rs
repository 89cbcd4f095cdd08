//! End-to-end replays of the finite constructions: the nilpotent algebras
//! `A(k, p)` and the identities separating them, the quotient reconstruction
//! of the divisibility semirings from powers of S_53, the embedding of
//! `S_c*(a1..ak)` into `A(k, p)`, the B_0 checks and the regularization
//! corpus.

mod b0;
mod corpus;
mod reconstruct;
mod report;
mod separation;

pub use b0::{b0_checks, B0Params, B0Report, ChainFact, IsotermCheck, OccurrenceCheck};
pub use corpus::{
    engine_oracle_check, random_identity, regularization_check, regularization_corpus, CorpusParams, OracleReport,
    RegularizationReport,
};
pub use reconstruct::{
    embed_sc_star_in_a, reconstruct_sc_star, EmbeddingReport, ReconstructionReport, RECONSTRUCT_GUARD,
};
pub use report::{Report, Verdict};
pub use separation::{
    build_a, corroborate_by_sampling, generator_subsets, reduction_satisfies, sigma, verify_power_structure,
    witness_assignment, witness_failure, PowerStructure, ReductionReport, ReductionVerdict, SeparationInstance,
    SigmaIdentity, StructuralFacts, WitnessReport, AMBIENT_GUARD,
};
