//! Well-definedness of stream specifications.
//!
//! A specification is turned into its observational rewrite system, whose
//! termination (together with the data rules) implies that the specification
//! has a unique stream model.

pub mod engine;
pub mod equiv;
pub mod exec;
pub mod spec;
pub mod syntax;
pub mod term;
pub mod termination;
pub mod transform;
