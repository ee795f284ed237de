//! Evaluation: normal forms, stream elements and prefixes, loop search.

mod cases;
mod loops;
pub mod normalize;
mod stream;

pub use cases::CaseEval;
pub use loops::{
    find_loop, find_loop_with, standard_seeds, LoopWitness, DEFAULT_LOOP_DEPTH, DEFAULT_LOOP_WIDTH,
};
pub use normalize::{
    innermost, is_data_value, normalize, normalize_with, outermost, CancelToken, EvalResult,
    Exhaustion, Limits, Normalized, DEFAULT_FUEL, DEFAULT_MAX_DEPTH,
};
pub use stream::{element, prefix, Observer, Prefix, PrefixMode};
