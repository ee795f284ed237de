//! Fuelled normalization.
//!
//! Innermost normalization runs on an explicit stack, evaluating rule
//! right-hand sides under substitutions whose range is already normal. The
//! order of contractions is exactly leftmost-innermost, so `steps` agrees
//! with iterating [`rewrite_step`]. Nothing here recurses on the evaluated
//! term, so divergent systems exhaust fuel or the depth cap instead of the
//! native stack.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::term::{rewrite_step, Strategy, Substitution, Term, Trs};

pub const DEFAULT_FUEL: u64 = 1_000_000;
/// Nesting bound on terms under evaluation; exceeding it counts as exhaustion.
pub const DEFAULT_MAX_DEPTH: usize = 2048;
const CANCEL_CHECK_INTERVAL: u64 = 1024;

/// Cooperative cancellation flag shared between a caller and long-running work.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug)]
pub struct Limits {
    pub fuel: u64,
    pub max_depth: usize,
    pub cancel: Option<CancelToken>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            fuel: DEFAULT_FUEL,
            max_depth: DEFAULT_MAX_DEPTH,
            cancel: None,
        }
    }
}

impl Limits {
    pub fn with_fuel(fuel: u64) -> Self {
        Limits {
            fuel,
            ..Limits::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exhaustion {
    Fuel,
    Depth,
    Cancelled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalResult {
    /// A ground data normal form without observers or stream subterms.
    Value(Term),
    FuelExhausted {
        last: Term,
        steps: u64,
        cause: Exhaustion,
    },
    /// A normal form that is not a data value.
    StuckNonData(Term),
}

impl EvalResult {
    pub fn value(&self) -> Option<&Term> {
        match self {
            EvalResult::Value(t) => Some(t),
            _ => None,
        }
    }
}

/// True for ground terms of sort d all of whose subterms have sort d.
pub fn is_data_value(t: &Term) -> bool {
    use crate::term::Sort;
    t.sort() == Sort::Data && t.is_ground() && t.args().iter().all(is_data_value)
}

/// Normal form reached by a strategy, or why it was not reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Done {
        term: Term,
        steps: u64,
    },
    Stopped {
        last: Term,
        steps: u64,
        cause: Exhaustion,
    },
}

pub fn normalize(trs: &Trs, t: &Term, strategy: Strategy, fuel: u64) -> EvalResult {
    normalize_with(trs, t, strategy, &Limits::with_fuel(fuel))
}

pub fn normalize_with(trs: &Trs, t: &Term, strategy: Strategy, limits: &Limits) -> EvalResult {
    let out = match strategy {
        Strategy::LeftmostInnermost => innermost(trs, t, limits),
        Strategy::LeftmostOutermost => outermost(trs, t, limits),
    };
    match out {
        Normalized::Done { term, .. } if is_data_value(&term) => EvalResult::Value(term),
        Normalized::Done { term, .. } => EvalResult::StuckNonData(term),
        Normalized::Stopped { last, steps, cause } => {
            EvalResult::FuelExhausted { last, steps, cause }
        }
    }
}

struct Frame<'a> {
    symbol: &'a crate::term::Sym,
    pattern_args: &'a [Term],
    subst: Arc<Substitution>,
    done: Vec<Term>,
}

enum Task<'a> {
    Eval(&'a Term, Arc<Substitution>),
    Owned(Term),
}

/// Leftmost-innermost normalization of `t`.
pub fn innermost<'a>(trs: &'a Trs, t: &'a Term, limits: &Limits) -> Normalized {
    let mut steps: u64 = 0;
    let mut frames: Vec<Frame<'a>> = Vec::new();
    // Right-hand sides are borrowed from `trs`; the root term from the caller.
    let mut task = Task::Eval(t, Arc::new(Substitution::new()));
    loop {
        // Descend until a value is produced.
        let value = match task {
            Task::Owned(v) => v,
            Task::Eval(pat, ref subst) => match pat {
                Term::Var(v) => subst.get(v).cloned().unwrap_or_else(|| pat.clone()),
                Term::App(f, args) if args.is_empty() => {
                    // Constants still need a root check below.
                    frames.push(Frame {
                        symbol: f,
                        pattern_args: args,
                        subst: subst.clone(),
                        done: Vec::new(),
                    });
                    if frames.len() > limits.max_depth {
                        return stopped(frames, None, steps, Exhaustion::Depth);
                    }
                    match finish_frames(trs, &mut frames, &mut steps, limits) {
                        Ok(Step::Value(v)) => v,
                        Ok(Step::Task(next)) => {
                            task = next;
                            continue;
                        }
                        Err((focus, cause)) => return stopped(frames, focus, steps, cause),
                    }
                }
                Term::App(f, args) => {
                    frames.push(Frame {
                        symbol: f,
                        pattern_args: args,
                        subst: subst.clone(),
                        done: Vec::with_capacity(args.len()),
                    });
                    if frames.len() > limits.max_depth {
                        return stopped(frames, None, steps, Exhaustion::Depth);
                    }
                    task = Task::Eval(&args[0], subst.clone());
                    continue;
                }
            },
        };
        // Deliver the value to the innermost open frame.
        let Some(top) = frames.last_mut() else {
            return Normalized::Done { term: value, steps };
        };
        top.done.push(value);
        if top.done.len() < top.pattern_args.len() {
            let next = &top.pattern_args[top.done.len()];
            task = Task::Eval(next, top.subst.clone());
            continue;
        }
        match finish_frames(trs, &mut frames, &mut steps, limits) {
            Ok(Step::Value(v)) => task = Task::Owned(v),
            Ok(Step::Task(next)) => task = next,
            Err((focus, cause)) => return stopped(frames, focus, steps, cause),
        }
    }
}

enum Step<'a> {
    Value(Term),
    Task(Task<'a>),
}

/// Closes the top frame, whose arguments are all normal: contracts at its
/// root or yields the normal form.
fn finish_frames<'a>(
    trs: &'a Trs,
    frames: &mut Vec<Frame<'a>>,
    steps: &mut u64,
    limits: &Limits,
) -> Result<Step<'a>, (Option<Term>, Exhaustion)> {
    let frame = frames.pop().expect("finish_frames on empty stack");
    let term = Term::App(frame.symbol.clone(), frame.done.into());
    match trs.root_redex(&term) {
        None => Ok(Step::Value(term)),
        Some((rule, theta)) => {
            if *steps >= limits.fuel {
                return Err((Some(term), Exhaustion::Fuel));
            }
            if (*steps).is_multiple_of(CANCEL_CHECK_INTERVAL)
                && limits
                    .cancel
                    .as_ref()
                    .is_some_and(CancelToken::is_cancelled)
            {
                return Err((Some(term), Exhaustion::Cancelled));
            }
            *steps += 1;
            Ok(Step::Task(Task::Eval(
                trs.rules()[rule].rhs(),
                Arc::new(theta),
            )))
        }
    }
}

/// Rebuilds the whole current term from the open frames around `focus`.
fn stopped(
    frames: Vec<Frame<'_>>,
    focus: Option<Term>,
    steps: u64,
    cause: Exhaustion,
) -> Normalized {
    let mut cur = focus;
    for frame in frames.into_iter().rev() {
        let mut args = frame.done;
        let filled = args.len() + usize::from(cur.is_some());
        if let Some(c) = cur.take() {
            args.push(c);
        }
        for p in &frame.pattern_args[filled.min(frame.pattern_args.len())..] {
            args.push(p.apply(&frame.subst));
        }
        cur = Some(Term::App(frame.symbol.clone(), args.into()));
    }
    Normalized::Stopped {
        last: cur.expect("at least one frame when stopping"),
        steps,
        cause,
    }
}

/// Leftmost-outermost normalization by repeated single steps.
pub fn outermost(trs: &Trs, t: &Term, limits: &Limits) -> Normalized {
    let mut cur = t.clone();
    let mut steps = 0u64;
    loop {
        if cur.depth() > limits.max_depth {
            return Normalized::Stopped {
                last: cur,
                steps,
                cause: Exhaustion::Depth,
            };
        }
        if steps.is_multiple_of(CANCEL_CHECK_INTERVAL)
            && limits
                .cancel
                .as_ref()
                .is_some_and(CancelToken::is_cancelled)
        {
            return Normalized::Stopped {
                last: cur,
                steps,
                cause: Exhaustion::Cancelled,
            };
        }
        if steps >= limits.fuel {
            if rewrite_step(trs, &cur, Strategy::LeftmostOutermost).is_none() {
                return Normalized::Done { term: cur, steps };
            }
            return Normalized::Stopped {
                last: cur,
                steps,
                cause: Exhaustion::Fuel,
            };
        }
        match rewrite_step(trs, &cur, Strategy::LeftmostOutermost) {
            None => return Normalized::Done { term: cur, steps },
            Some(step) => {
                cur = step.term;
                steps += 1;
            }
        }
    }
}
