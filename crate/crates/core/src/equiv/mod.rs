//! Equational reasoning modulo stream models: proof scripts for the
//! congruence generated by the stream equations, the head/tail equations E
//! and case analysis over D, and the two-sided check that replacing
//! equations preserves semantics.
//!
//! E1 is `head(x : sigma) = x`, E2 is `T(x : sigma) = sigma` and E3 is
//! `sigma = head(sigma) : T(sigma)`, where `T` is the specification's own
//! tail symbol, recognised by its rule `T(x : sigma) = sigma`.

mod anchor;
mod check;
mod mutate;
mod preserve;
mod script;
mod search;

pub use anchor::{suggest_anchor, Anchor, AnchorError};
pub use check::{
    check_proof, check_script, e_equation, first_difference, named_rules, tail_symbol, ProofCheck,
};
pub use mutate::{mutations, Mutation};
pub use preserve::{check_preservation, Discharge, Obligation, PreservationVerdict};
pub use script::{parse_script, Direction, Justification, Proof, Script, Step};
pub use search::{search_proof, MAX_SEARCH_DEPTH};
