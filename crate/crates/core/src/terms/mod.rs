//! Terms and identities of ai-semirings.
//!
//! A term is a finite set of words (a sum of products); this representation
//! already quotients by additive commutativity, associativity and idempotency.

mod eval;
mod syntax;

pub use eval::{
    eval, eval_word, exhaustive_cost, is_isoterm_bounded, is_regular, nilpotent_identity, preceq, preceq_identity,
    sample_satisfies, satisfies, Counterexample, IsotermOutcome, Sampling, Satisfaction, DEFAULT_BUDGET,
};
pub use syntax::{format_term, parse_identity, parse_term, Assignment, Identity, Term, Var, Word};
